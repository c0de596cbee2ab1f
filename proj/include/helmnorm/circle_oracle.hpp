#pragma once

// Fourier diagonalization of the layer operators on the unit circle.
//
// On |x| = 1 every operator built from S, D and D' acts on e^{in theta} by
// multiplication, so operator norms reduce to weighted suprema over modes.

#include "helmnorm/norms.hpp"

namespace helmnorm {

struct FourierSymbol {
  int n;
  Complex value;
};

// S: (i pi / 2) Jn(k) Hn(k); D and D': (i pi k / 4)(Jn' Hn + Jn Hn');
// combined kinds: 1/2 + d_n - i eta s_n.
FourierSymbol circle_symbol(OperatorKind kind, int n, double k, double eta = 0.0);

// Smallest mode cutoff accepted by oracle_norm: ceil(k) + ceil(10 k^{1/3}) + 100.
int oracle_min_modes(double k);

// sup over |n| <= n_max of w_target(n) / w_source(n) * |symbol(n)|.
NormReport oracle_norm(OperatorKind kind, double k, const NormSpec& spec, int n_max, double eta = 0.0);

// Ratio w_target(n) / w_source(n) of the Sobolev weights on the unit circle.
double oracle_weight(const NormSpec& spec, int n, double k);

}  // namespace helmnorm
