#include "ramanujan/form.hpp"

#include <algorithm>
#include <cmath>

#include "ramanujan/error.hpp"
#include "ramanujan/satake.hpp"

namespace ramanujan::forms {

TableSource::TableSource(std::vector<std::pair<std::uint64_t, double>> entries,
                         std::uint64_t coverage)
    : entries_(std::move(entries)), coverage_(coverage) {
    for (std::size_t i = 1; i < entries_.size(); ++i)
        if (entries_[i].first <= entries_[i - 1].first)
            fail(ErrorCode::invalid_input, "coefficient table: primes must be strictly increasing");
}

std::optional<double> TableSource::eigenvalue(std::uint64_t p) const {
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                                     [](const auto& e, std::uint64_t v) { return e.first < v; });
    if (it == entries_.end() || it->first != p)
        return std::nullopt;
    return it->second;
}

SatoTateSource::SatoTateSource(std::uint64_t seed, std::uint64_t coverage,
                               std::map<std::uint64_t, double> non_tempered)
    : seed_(seed), coverage_(coverage), non_tempered_(std::move(non_tempered)) {
    for (const auto& [p, nu] : non_tempered_)
        if (!(nu > 0.0 && nu <= satake::kKimSarnakExponent))
            fail(ErrorCode::invalid_input, "synthetic form: nu out of (0, 7/64] at p = " +
                                               std::to_string(p));
}

std::optional<double> SatoTateSource::eigenvalue(std::uint64_t p) const {
    if (p > coverage_)
        return std::nullopt;
    if (const auto it = non_tempered_.find(p); it != non_tempered_.end()) {
        const double s = std::pow(static_cast<double>(p), it->second);
        return s + 1.0 / s;
    }
    return 2.0 * std::cos(satake::sato_tate_angle(p, seed_));
}

} // namespace ramanujan::forms
