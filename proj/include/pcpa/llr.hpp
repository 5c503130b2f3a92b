#pragma once

#include <vector>

#include "pcpa/subspace.hpp"

namespace pcpa {

// Log-likelihood ratios in natural-log units, L = ln(W(y|0)/W(y|1)).
using LlrVector = std::vector<double>;

// Saturation bound.  tanh(15) is 1 to double precision, so larger magnitudes
// carry no soft information; clamping keeps atanh finite without changing
// hard decisions.
inline constexpr double kLlrMax = 30.0;
// tanh-domain product magnitudes are clamped below 1 before atanh.
inline constexpr double kTanhProductMax = 1.0 - 1e-12;

double clamp_llr(double value);

// 2 atanh(product), with the product clamped to (-1, 1) first and the result
// clamped to [-kLlrMax, kLlrMax].
double from_tanh_product(double product);

// 2 atanh(tanh(a/2) tanh(b/2)), clamped.
double boxplus(double a, double b);

// Per coset T, the boxplus combination of all member LLRs:
// 2 atanh(prod_{z in T} tanh(L(z)/2)), clamped.  Requires dim >= 1.
LlrVector project_llr(const LlrVector& llr, const CosetTable& table);
LlrVector project_llr(const LlrVector& llr, const Subspace& b);

// Same combination over T - {z}, where T is the coset containing z.
double partial_project_llr(const LlrVector& llr, const CosetTable& table, Point z);
double partial_project_llr(const LlrVector& llr, const Subspace& b, Point z);

}  // namespace pcpa
