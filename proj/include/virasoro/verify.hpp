#pragma once
// Corpus verification: independent methods compared exactly, case by case.

#include <optional>
#include <string>
#include <vector>

#include "virasoro/paths.hpp"

namespace vir {

enum class CorpusKind { finitized, character, product, golden };

const char* kind_name(CorpusKind k);
std::optional<CorpusKind> parse_kind(const std::string& s);

struct CorpusSpec {
  std::vector<CorpusKind> kinds;
  int min_pp = 2, max_pp = 9;
  int min_p = 1;
  int order = 41;   // character coefficients q^0..q^{order-1}
  int max_L = 12;
  int path_cap = kDefaultPathCap;
};

// labels are (p,p',a,b,c,L), (p,p',r,s), or empty with a name for the goldens
struct CaseId {
  CorpusKind kind = CorpusKind::finitized;
  std::vector<int> labels;
  std::string name;
};
std::string case_label(const CaseId& id);

struct Mismatch {
  std::string left, right;  // the two methods that disagree
  long exponent = -1;       // first differing power of q; -1 for scalar goldens
  std::string left_value, right_value;
};

struct VerifyReport {
  CaseId id;
  std::vector<std::string> methods;
  std::optional<Mismatch> mismatch;
  std::string error;  // a library error raised while computing the case
  double elapsed_ms = 0;

  bool equal() const { return !mismatch && error.empty(); }
};

std::vector<CaseId> corpus_cases(const CorpusSpec& spec);
VerifyReport verify_case(const CaseId& id, const CorpusSpec& spec);

// Reports come back in corpus order whichever runner is used.
std::vector<VerifyReport> run_serial(const CorpusSpec& spec);
std::vector<VerifyReport> run_parallel(const CorpusSpec& spec, int jobs);  // jobs <= 0: all cores

int available_workers();

}  // namespace vir
