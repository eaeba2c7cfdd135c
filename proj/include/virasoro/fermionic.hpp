#pragma once
// Fundamental fermionic forms and the recursive character expressions built from them.

#include <optional>
#include <vector>

#include "virasoro/qalg.hpp"
#include "virasoro/takahashi.hpp"

namespace vir {

// Integer matrix with explicit row/column offsets so entries are read with the
// indices used in the formulas.
struct IndexedMatrix {
  int row_lo = 0, col_lo = 0, rows = 0, cols = 0;
  std::vector<int> data;

  int operator()(int j, int i) const {
    return data[static_cast<std::size_t>((j - row_lo) * cols + (i - col_lo))];
  }
  int& operator()(int j, int i) { return data[static_cast<std::size_t>((j - row_lo) * cols + (i - col_lo))]; }
};

// C_{ji} for 0 <= i, j <= t+1; zero outside the three diagonals.
int cartan_entry(const ModelData& M, int j, int i);

struct FermMatrices {
  IndexedMatrix C, C_star, C_bar, C_bar_star, B;
};
FermMatrices ferm_matrices(const ModelData& M);

struct Parity2 {
  std::vector<int> Q;      // Q_0..Q_{t-1}
  std::vector<int> Q_bar;  // Q_{t1+1}..Q_{t-1}
  int at(int i) const { return i < static_cast<int>(Q.size()) ? Q[static_cast<std::size_t>(i)] : 0; }
};

// (C*)^{-1} v by back substitution; v is a TVec, the result holds x_0..x_{t-1}.
std::vector<long> solve_c_star(const ModelData& M, const std::vector<long>& v);
Parity2 parity_vectors(const ModelData& M, const TVec& u);

// (constant, coefficient of L), both in quarter units of the exponent
struct LinearInL {
  long c = 0;
  long l = 0;
  long at(long L) const { return c + l * L; }
  friend bool operator==(const LinearInL&, const LinearInL&) = default;
};

struct GammaContext {
  std::optional<int> a, b;
};

struct GammaResult {
  long gamma0 = 0;
  long gamma = 0;
  LinearInL gamma_prime;
  bool special = false;                      // one of the sigma = 0 cases fired
  std::vector<long> alpha, beta, gammas;     // index j holds alpha_j etc., j = 0..t
  std::vector<long> alpha2, beta1;           // alpha''_j and beta'_j, j = 0..t-1
};

GammaResult gamma(const ModelData& M, const Run& left, const Run& right, const GammaContext& ctx = {});

struct MnSolution {
  std::vector<long> n;      // n_1..n_t at 1..t (index 0 unused)
  std::vector<long> m_hat;  // m_0..m_{t-1}
};
std::vector<MnSolution> mn_solutions(const ModelData& M, const TVec& u, long L);

// Context for the finite forms: the endpoint heights fix the special gamma cases.
struct FormContext {
  int a = 0, b = 0;
};

// F(u^L,u^R,L), not yet required to be integral (F-tilde combines shifted pieces).
QPoly F_finite_raw(const ModelData& M, const UVector& left, const UVector& right, long L, const FormContext& ctx);
QPoly F_finite(const ModelData& M, const UVector& left, const UVector& right, long L, const FormContext& ctx);
QPoly F_tilde(const ModelData& M, const UVector& left, const UVector& u, long L, const FormContext& ctx);

// The L -> infinity forms, to order N. F_star carries the -N(X^R).n~ term and
// reduces to F_infinite when sigma(u^R) > t_1.
QSeries F_infinite(const ModelData& M, const UVector& left, const UVector& right, int N,
                   const GammaContext& ctx = {});
QSeries F_star(const ModelData& M, const UVector& left, const UVector& right, int N, const GammaContext& ctx);

// u in U-bar(b): sigma = 0 and the band across b + Delta(u) is of the kind that kills the L -> infinity limit
bool in_u_bar(const ModelData& M, int b, const UVector& u);

enum class TermKind { F, F_tilde };

struct FermTerm {
  UVector left, right;
  TermKind kind = TermKind::F;
  GammaResult gamma;
  int a = 0, b = 0;
  std::optional<long> L;  // empty for the characters
};

struct FermExpr {
  int p = 0, pp = 0;
  std::vector<int> labels;       // r,s or a,b,c,L
  std::vector<FermTerm> terms;
  std::vector<FermExpr> extra;   // zero or one nested expression

  int depth() const { return extra.empty() ? 0 : 1 + extra.front().depth(); }
  std::size_t total_terms() const { return terms.size() + (extra.empty() ? 0 : extra.front().total_terms()); }
  // (p,p') at each level, outermost first
  std::vector<std::pair<int, int>> chain() const;
};

struct CharacterResult {
  QSeries series;
  FermExpr expr;
};
struct FinitizedResult {
  QPoly poly;
  FermExpr expr;
};

CharacterResult character_fermionic(const ModelData& M, int r, int s, int N, const TreeConfig& cfg = {});
FinitizedResult finitized_fermionic(const ModelData& M, int a, int b, int c, long L, const TreeConfig& cfg = {});

std::string expr_to_string(const FermExpr& e);

}  // namespace vir
