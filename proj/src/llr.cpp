#include "pcpa/llr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pcpa {

namespace {

void check_projection_args(const LlrVector& llr, const CosetTable& table) {
    if (table.subspace.dim() < 1)
        throw std::invalid_argument("LLR projection requires a subspace of dimension >= 1");
    if (llr.size() != std::size_t{1} << table.subspace.ambient())
        throw std::invalid_argument("LLR vector length does not match 2^m");
}

}  // namespace

double clamp_llr(double value) { return std::clamp(value, -kLlrMax, kLlrMax); }

double from_tanh_product(double product) {
    product = std::clamp(product, -kTanhProductMax, kTanhProductMax);
    return clamp_llr(2.0 * std::atanh(product));
}

double boxplus(double a, double b) {
    return from_tanh_product(std::tanh(a / 2.0) * std::tanh(b / 2.0));
}

LlrVector project_llr(const LlrVector& llr, const CosetTable& table) {
    check_projection_args(llr, table);
    LlrVector out(table.coset_count());
    for (std::uint32_t t = 0; t < table.coset_count(); ++t) {
        double product = 1.0;
        for (Point z : table.coset_members(t)) product *= std::tanh(llr[z] / 2.0);
        out[t] = from_tanh_product(product);
    }
    return out;
}

LlrVector project_llr(const LlrVector& llr, const Subspace& b) {
    return project_llr(llr, build_coset_table(b));
}

double partial_project_llr(const LlrVector& llr, const CosetTable& table, Point z) {
    check_projection_args(llr, table);
    if (z >= llr.size()) throw std::invalid_argument("partial_project_llr: point outside F_2^m");
    double product = 1.0;
    for (Point member : table.coset_members(table.coset_of[z]))
        if (member != z) product *= std::tanh(llr[member] / 2.0);
    return from_tanh_product(product);
}

double partial_project_llr(const LlrVector& llr, const Subspace& b, Point z) {
    return partial_project_llr(llr, build_coset_table(b), z);
}

}  // namespace pcpa
