#pragma once

// Form metadata and per-prime Hecke eigenvalue access.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ramanujan::forms {

class CoefficientSource {
public:
    virtual ~CoefficientSource() = default;
    // lambda(p), or nothing if the source has no value at p.
    virtual std::optional<double> eigenvalue(std::uint64_t p) const = 0;
    // Largest p the source claims to cover.
    virtual std::uint64_t coverage() const = 0;
};

// Tabulated (p, lambda(p)) pairs, p strictly increasing.
class TableSource final : public CoefficientSource {
public:
    TableSource(std::vector<std::pair<std::uint64_t, double>> entries, std::uint64_t coverage);

    std::optional<double> eigenvalue(std::uint64_t p) const override;
    std::uint64_t coverage() const override { return coverage_; }
    const std::vector<std::pair<std::uint64_t, double>>& entries() const noexcept {
        return entries_;
    }

private:
    std::vector<std::pair<std::uint64_t, double>> entries_;
    std::uint64_t coverage_;
};

// Synthetic form: lambda(p) = 2 cos(theta_p) with Sato-Tate angles drawn from
// `seed`, except at listed primes where lambda(p) = p^nu + p^{-nu}.
class SatoTateSource final : public CoefficientSource {
public:
    SatoTateSource(std::uint64_t seed, std::uint64_t coverage,
                   std::map<std::uint64_t, double> non_tempered = {});

    std::optional<double> eigenvalue(std::uint64_t p) const override;
    std::uint64_t coverage() const override { return coverage_; }

private:
    std::uint64_t seed_;
    std::uint64_t coverage_;
    std::map<std::uint64_t, double> non_tempered_;
};

struct FormMeta {
    std::string label;
    std::uint64_t level = 1;
    double t = 0.0; // spectral parameter
    std::shared_ptr<const CoefficientSource> source;
};

} // namespace ramanujan::forms
