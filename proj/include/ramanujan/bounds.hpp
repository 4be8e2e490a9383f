#pragma once

// Conductor and least-prime exponent bookkeeping.

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "ramanujan/form.hpp"

namespace ramanujan::bounds {

// N^2 (1 + |t|)^2.
double conductor(const forms::FormMeta& meta);

struct ExponentResult {
    int num_forms;
    double chi0;
    double chi1;
    double zero;                 // first zero of sigma
    double U_used;               // zero truncated strictly below, 5 decimals
    double exponent;             // 1 / U_used rounded up at 6 decimals
    double untruncated_exponent; // 1 / zero rounded up at 6 decimals
    std::optional<double> closed_form_zero; // e^{1/4} for three forms
};

// Two forms use the (2, -2) equation, three forms (1, -3).
ExponentResult least_prime_exponent(int num_forms);

// Rounding helpers used above; exposed for tests.
double truncate_below(double x, int decimals);
double round_up(double x, int decimals);

struct LeastPrimeBound {
    double base;     // prod N_i (1 + |t_i|)
    double exponent; // p << base^exponent
    std::string implied_constant = "unspecified";
    double source_zero;
    double U_used;
    double untruncated_exponent;
};

LeastPrimeBound least_prime_bound(std::span<const forms::FormMeta> metas);

nlohmann::json to_json(const LeastPrimeBound& bound);

// (1 - sigma) / 2 for 0 < sigma < 1.
double convexity_exponent(double sigma);

} // namespace ramanujan::bounds
