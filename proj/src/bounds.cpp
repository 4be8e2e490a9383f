#include "ramanujan/bounds.hpp"

#include <cmath>

#include "ramanujan/dde.hpp"
#include "ramanujan/error.hpp"

namespace ramanujan::bounds {

double conductor(const forms::FormMeta& meta) {
    if (meta.level < 1)
        fail(ErrorCode::invalid_input, "conductor: level must be >= 1");
    const double n = static_cast<double>(meta.level);
    const double s = 1.0 + std::abs(meta.t);
    return n * n * s * s;
}

double truncate_below(double x, int decimals) {
    const double scale = std::pow(10.0, decimals);
    double t = std::floor(x * scale) / scale;
    if (t >= x)
        t -= 1.0 / scale;
    return t;
}

double round_up(double x, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::ceil(x * scale) / scale;
}

ExponentResult least_prime_exponent(int num_forms) {
    if (num_forms != 2 && num_forms != 3)
        fail(ErrorCode::invalid_input, "least_prime_exponent: num_forms must be 2 or 3");
    ExponentResult r{};
    r.num_forms = num_forms;
    r.chi0 = num_forms == 2 ? 2.0 : 1.0;
    r.chi1 = num_forms == 2 ? -2.0 : -3.0;
    dde::ZeroOptions options;
    options.tol = 1e-9;
    options.initial_step = 1e-4;
    r.zero = dde::first_zero(dde::DdeSpec(r.chi0, r.chi1), options).zero;
    r.U_used = truncate_below(r.zero, 5);
    r.exponent = round_up(1.0 / r.U_used, 6);
    r.untruncated_exponent = round_up(1.0 / r.zero, 6);
    if (num_forms == 3)
        r.closed_form_zero = std::exp(0.25);
    return r;
}

LeastPrimeBound least_prime_bound(std::span<const forms::FormMeta> metas) {
    if (metas.size() != 2 && metas.size() != 3)
        fail(ErrorCode::invalid_input, "least_prime_bound: need 2 or 3 forms, got " +
                                           std::to_string(metas.size()));
    double base = 1.0;
    for (const auto& m : metas) {
        if (m.level < 1)
            fail(ErrorCode::invalid_input, "least_prime_bound: level must be >= 1");
        base *= static_cast<double>(m.level) * (1.0 + std::abs(m.t));
    }
    const auto e = least_prime_exponent(static_cast<int>(metas.size()));
    LeastPrimeBound out;
    out.base = base;
    out.exponent = e.exponent;
    out.source_zero = e.zero;
    out.U_used = e.U_used;
    out.untruncated_exponent = e.untruncated_exponent;
    return out;
}

nlohmann::json to_json(const LeastPrimeBound& b) {
    return {
        {"base", b.base},
        {"exponent", b.exponent},
        {"implied_constant", b.implied_constant},
        {"source_zero", b.source_zero},
        {"U_used", b.U_used},
        {"untruncated_exponent", b.untruncated_exponent},
    };
}

double convexity_exponent(double sigma) {
    if (!(sigma > 0.0 && sigma < 1.0))
        fail(ErrorCode::invalid_input, "convexity_exponent: sigma must lie in (0, 1)");
    return (1.0 - sigma) / 2.0;
}

} // namespace ramanujan::bounds
