#include "ramanujan/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "ramanujan/error.hpp"
#include "ramanujan/parallel.hpp"
#include "ramanujan/satake.hpp"

namespace ramanujan::kernels {

using sieve::MultFuncSpec;
using sieve::SieveTable;

namespace {

void require_within(std::uint64_t t, const SieveTable& table, const char* what) {
    if (t > table.limit())
        fail(ErrorCode::invalid_input,
             std::string(what) + ": range " + std::to_string(t) + " exceeds sieve table limit " +
                 std::to_string(table.limit()));
}

std::uint64_t floor_to_u64(double x) {
    return x < 1.0 ? 0 : static_cast<std::uint64_t>(std::floor(x));
}

// log(b / a) for 1 <= a < b, accurate when b - a << a.
double log_ratio(double a, double b) { return std::log1p((b - a) / a); }

} // namespace

double squarefree_sum_serial(const MultFuncSpec& f, std::uint64_t t, std::uint64_t q,
                             const SieveTable& table) {
    require_within(t, table, "squarefree_sum");
    const auto fq = f.coprime_to(q);
    CompensatedSum sum;
    for (std::uint64_t n = 1; n <= t; ++n)
        sum.add(fq.value(n, table));
    return sum.value();
}

double squarefree_sum_omp(const MultFuncSpec& f, std::uint64_t t, std::uint64_t q,
                          const SieveTable& table) {
    require_within(t, table, "squarefree_sum");
    const auto fq = f.coprime_to(q);
    const auto chunks = make_chunks(1, t + 1);
    return chunked_reduce(
               chunks, CompensatedSum{},
               [&](const ChunkRange& c, CompensatedSum& acc) {
                   for (std::uint64_t n = c.begin; n < c.end; ++n)
                       acc.add(fq.value(n, table));
               },
               [](CompensatedSum& acc, const CompensatedSum& part) { acc.add(part); })
        .value();
}

double log_weighted_direct_serial(const MultFuncSpec& f, double x, std::uint64_t q,
                                  const SieveTable& table) {
    const std::uint64_t top = floor_to_u64(x);
    require_within(top, table, "log_weighted_sum");
    const auto fq = f.coprime_to(q);
    CompensatedSum sum;
    for (std::uint64_t n = 1; n <= top; ++n) {
        const double v = fq.value(n, table);
        if (v != 0.0)
            sum.add(v * std::log(x / static_cast<double>(n)));
    }
    return sum.value();
}

double log_weighted_direct_omp(const MultFuncSpec& f, double x, std::uint64_t q,
                               const SieveTable& table) {
    const std::uint64_t top = floor_to_u64(x);
    require_within(top, table, "log_weighted_sum");
    const auto fq = f.coprime_to(q);
    const auto chunks = make_chunks(1, top + 1);
    return chunked_reduce(
               chunks, CompensatedSum{},
               [&](const ChunkRange& c, CompensatedSum& acc) {
                   for (std::uint64_t n = c.begin; n < c.end; ++n) {
                       const double v = fq.value(n, table);
                       if (v != 0.0)
                           acc.add(v * std::log(x / static_cast<double>(n)));
                   }
               },
               [](CompensatedSum& acc, const CompensatedSum& part) { acc.add(part); })
        .value();
}

double log_weighted_integrated_serial(const MultFuncSpec& f, double x, std::uint64_t q,
                                      const SieveTable& table) {
    const std::uint64_t top = floor_to_u64(x);
    require_within(top, table, "log_weighted_sum");
    const auto fq = f.coprime_to(q);
    CompensatedSum running;
    CompensatedSum integral;
    for (std::uint64_t k = 1; k <= top; ++k) {
        running.add(fq.value(k, table));
        const double kd = static_cast<double>(k);
        const double right = std::min(kd + 1.0, x);
        if (right > kd)
            integral.add(running.value() * log_ratio(kd, right));
    }
    return integral.value();
}

double log_weighted_integrated_omp(const MultFuncSpec& f, double x, std::uint64_t q,
                                   const SieveTable& table) {
    const std::uint64_t top = floor_to_u64(x);
    require_within(top, table, "log_weighted_sum");
    const auto fq = f.coprime_to(q);
    const auto chunks = make_chunks(1, top + 1);

    // Pass 1: chunk totals of f.  Pass 2: rerun each chunk from its offset.
    std::vector<CompensatedSum> totals(chunks.size());
    parallel_for_index(chunks.size(), [&](std::size_t i) {
        for (std::uint64_t n = chunks[i].begin; n < chunks[i].end; ++n)
            totals[i].add(fq.value(n, table));
    });
    std::vector<CompensatedSum> offsets(chunks.size());
    for (std::size_t i = 1; i < chunks.size(); ++i) {
        offsets[i] = offsets[i - 1];
        offsets[i].add(totals[i - 1]);
    }
    return chunked_reduce(
               chunks, CompensatedSum{},
               [&](const ChunkRange& c, CompensatedSum& acc) {
                   CompensatedSum running = offsets[(c.begin - 1) / kDefaultChunk];
                   for (std::uint64_t k = c.begin; k < c.end; ++k) {
                       running.add(fq.value(k, table));
                       const double kd = static_cast<double>(k);
                       const double right = std::min(kd + 1.0, x);
                       if (right > kd)
                           acc.add(running.value() * log_ratio(kd, right));
                   }
               },
               [](CompensatedSum& acc, const CompensatedSum& part) { acc.add(part); })
        .value();
}

namespace {

struct SweepAccumulator {
    IdentitySweep stats;
    bool empty = true;

    void observe(const satake::SatakeLocal& s) {
        const auto c = satake::sym_coeffs(s);
        const auto r = satake::check_hecke_identities(c);
        const double gap =
            std::abs(satake::adjoint_coeff(s) - satake::adjoint_coeff_from_parameters(s));
        const auto env = satake::kim_sarnak_envelope(s.p());
        const bool rp = satake::is_ramanujan_local(s);
        auto& st = stats;
        ++st.samples;
        if (!s.is_tempered())
            ++st.non_tempered;
        st.max_square_residual = std::max(st.max_square_residual, r.square);
        st.max_product_residual = std::max(st.max_product_residual, r.product);
        st.max_adjoint_route_gap = std::max(st.max_adjoint_route_gap, gap);
        st.min_a2 = empty ? c.a2 : std::min(st.min_a2, c.a2);
        st.min_a4 = empty ? c.a4 : std::min(st.min_a4, c.a4);
        if (std::abs(s.lambda()) > env.eigenvalue * (1.0 + 1e-12) ||
            std::abs(c.a2) > env.adjoint * (1.0 + 1e-12))
            ++st.envelope_violations;
        if (!rp && !(c.a2 > 3.0 && c.a4 > 5.0))
            ++st.implication_violations;
        empty = false;
    }

    void merge(const SweepAccumulator& o) {
        if (o.empty)
            return;
        auto& a = stats;
        const auto& b = o.stats;
        a.min_a2 = empty ? b.min_a2 : std::min(a.min_a2, b.min_a2);
        a.min_a4 = empty ? b.min_a4 : std::min(a.min_a4, b.min_a4);
        a.samples += b.samples;
        a.non_tempered += b.non_tempered;
        a.max_square_residual = std::max(a.max_square_residual, b.max_square_residual);
        a.max_product_residual = std::max(a.max_product_residual, b.max_product_residual);
        a.max_adjoint_route_gap = std::max(a.max_adjoint_route_gap, b.max_adjoint_route_gap);
        a.envelope_violations += b.envelope_violations;
        a.implication_violations += b.implication_violations;
        empty = false;
    }
};

} // namespace

satake::SatakeLocal sweep_sample(std::uint64_t index, std::uint64_t seed) {
    satake::SampleOptions options;
    options.mode = (index % 2 == 0) ? satake::SampleMode::sato_tate
                                    : satake::SampleMode::non_tempered;
    return satake::sample_one(index, options, seed);
}

IdentitySweep hecke_identity_sweep_serial(std::uint64_t count, std::uint64_t seed) {
    SweepAccumulator acc;
    for (std::uint64_t i = 0; i < count; ++i)
        acc.observe(sweep_sample(i, seed));
    return acc.stats;
}

IdentitySweep hecke_identity_sweep_omp(std::uint64_t count, std::uint64_t seed) {
    const auto chunks = make_chunks(0, count, 4096);
    return chunked_reduce(
               chunks, SweepAccumulator{},
               [&](const ChunkRange& c, SweepAccumulator& acc) {
                   for (std::uint64_t i = c.begin; i < c.end; ++i)
                       acc.observe(sweep_sample(i, seed));
               },
               [](SweepAccumulator& acc, const SweepAccumulator& part) { acc.merge(part); })
        .stats;
}

namespace {

struct PrefixProblem {
    std::vector<std::uint64_t> support; // n <= z with h(n) != 0 and (n, q) = 1
    std::vector<double> weight;
    std::vector<std::uint64_t> radicals; // squarefree r <= z
};

PrefixProblem prepare_prefix(std::span<const double> values, std::uint64_t z, std::uint64_t q,
                             const SieveTable& table) {
    require_within(z, table, "lower_bound_check");
    if (values.size() <= z)
        fail(ErrorCode::invalid_input, "lower_bound_check: value table shorter than z");
    PrefixProblem pb;
    for (std::uint64_t n = 1; n <= z; ++n) {
        if (values[n] != 0.0 && sieve::gcd(n, q) == 1) {
            pb.support.push_back(n);
            pb.weight.push_back(values[n]);
        }
        if (table.is_squarefree(n))
            pb.radicals.push_back(n);
    }
    return pb;
}

std::optional<PrefixWitness> first_negative(const PrefixProblem& pb, std::uint64_t r) {
    double running = 0.0;
    for (std::size_t i = 0; i < pb.support.size(); ++i) {
        if (sieve::gcd(pb.support[i], r) != 1)
            continue;
        running += pb.weight[i];
        if (running < 0.0)
            return PrefixWitness{r, pb.support[i], running};
    }
    return std::nullopt;
}

} // namespace

std::optional<PrefixWitness> negative_coprime_prefix_serial(std::span<const double> values,
                                                            std::uint64_t z, std::uint64_t q,
                                                            const SieveTable& table) {
    const auto pb = prepare_prefix(values, z, q, table);
    for (std::uint64_t r : pb.radicals)
        if (auto w = first_negative(pb, r))
            return w;
    return std::nullopt;
}

std::optional<PrefixWitness> negative_coprime_prefix_omp(std::span<const double> values,
                                                         std::uint64_t z, std::uint64_t q,
                                                         const SieveTable& table) {
    const auto pb = prepare_prefix(values, z, q, table);
    const auto chunks = make_chunks(0, pb.radicals.size(), 64);
    // Partial: earliest witness in the chunk; chunks merge left to right so the
    // smallest r wins regardless of scheduling.
    using Partial = std::optional<PrefixWitness>;
    return chunked_reduce(
        chunks, Partial{},
        [&](const ChunkRange& c, Partial& acc) {
            for (std::uint64_t i = c.begin; i < c.end && !acc; ++i)
                acc = first_negative(pb, pb.radicals[i]);
        },
        [](Partial& acc, const Partial& part) {
            if (!acc)
                acc = part;
        });
}

} // namespace ramanujan::kernels
