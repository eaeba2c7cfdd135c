#pragma once
// Bosonic (alternating-sum) and product forms of the characters.

#include "virasoro/cfmodel.hpp"
#include "virasoro/qalg.hpp"

namespace vir {

// chi_{r,s} to order N (coefficients of q^0..q^{N-1}).
QSeries character_bosonic(const ModelData& M, int r, int s, int N);

// chi_{a,b,c}(L), with c = 0 and c = p' admitted.
QPoly finitized_bosonic(const ModelData& M, int a, int b, int c, int L);

// Product form; throws NotProductCase unless p = 2r, p' = 2s, p = 3r or p' = 3s
// (up to the symmetry r,s -> p-r,p'-s).
QSeries character_product(const ModelData& M, int r, int s, int N);
bool has_product_form(const ModelData& M, int r, int s);

// r(b,c), including the c = 0 and c = p' extension.
int limit_r_of(int b, int c, const ModelData& M);

}  // namespace vir
