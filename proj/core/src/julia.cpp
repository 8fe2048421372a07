#include "dendrite/julia.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <thread>

namespace dendrite {

OrbitRecord iterate_orbit(const ComplexParam& param, std::int64_t steps) {
    if (steps < 1) throw ContractViolation("orbit needs at least one step");
    OrbitRecord record;
    record.samples.reserve(static_cast<std::size_t>(steps) + 1);
    std::complex<double> z{0.0, 0.0};
    record.samples.push_back(z);
    for (std::int64_t k = 1; k <= steps; ++k) {
        z = z * z + param.c;
        record.samples.push_back(z);
        if (std::abs(z) > 2.0) {
            record.escaped_at = k;
            return record;
        }
    }
    // Cycle entry measured from the critical value z_1.
    const auto n = static_cast<std::int64_t>(record.samples.size());
    for (std::int64_t rho = 0; rho < n - 1; ++rho) {
        for (std::int64_t p = 1; 1 + rho + 2 * p <= n; ++p) {
            bool cycle = true;
            for (std::int64_t k = 0; k < p && cycle; ++k)
                cycle = std::abs(record.samples[static_cast<std::size_t>(1 + rho + k)] -
                                 record.samples[static_cast<std::size_t>(1 + rho + p + k)]) <
                        param.tolerance;
            if (cycle) {
                record.preperiod = rho;
                record.period = p;
                return record;
            }
        }
    }
    return record;
}

MisiurewiczVerdict misiurewicz_detect(const ComplexParam& param, std::int64_t steps) {
    const OrbitRecord record = iterate_orbit(param, steps);
    MisiurewiczVerdict verdict;
    verdict.tolerance = param.tolerance;
    if (record.escaped_at) {
        verdict.kind = MisiurewiczKind::Escapes;
        return verdict;
    }
    if (!record.preperiod) {
        verdict.kind = MisiurewiczKind::Undecided;
        return verdict;
    }
    verdict.preperiod = *record.preperiod;
    verdict.period = *record.period;
    bool zero_in_cycle = false;
    for (std::int64_t k = 0; k < verdict.period; ++k) {
        const auto idx = static_cast<std::size_t>(1 + verdict.preperiod + k);
        zero_in_cycle = zero_in_cycle || std::abs(record.samples[idx]) < param.tolerance;
    }
    if (zero_in_cycle) {
        verdict.kind = MisiurewiczKind::PeriodicCritical;
    } else if (verdict.preperiod >= 1) {
        verdict.kind = MisiurewiczKind::Misiurewicz;
    } else {
        verdict.kind = MisiurewiczKind::Undecided;
    }
    return verdict;
}

Symbol partition_symbol(std::complex<double> z, const PartitionSpec& partition) {
    if (std::abs(z) < partition.star_tolerance) return Symbol::Star;
    const double im = std::imag(z * std::polar(1.0, -partition.theta));
    if (std::abs(im) < partition.star_tolerance)
        throw PartitionAmbiguity("point (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                                 ") lies within tolerance of the partition line; adjust theta");
    return im > 0 ? Symbol::One : Symbol::Zero;
}

SymSeq extract_kneading(const ComplexParam& param, const PartitionSpec& partition, std::int64_t depth) {
    const std::int64_t steps = std::max<std::int64_t>(64, depth);
    const MisiurewiczVerdict verdict = misiurewicz_detect(param, steps);
    if (verdict.kind != MisiurewiczKind::Misiurewicz)
        throw ContractViolation("kneading extraction requires a Misiurewicz parameter");
    const OrbitRecord record = iterate_orbit(param, steps);
    FiniteWord pre, per;
    for (std::int64_t k = 1; k <= verdict.preperiod; ++k)
        pre.push_back(partition_symbol(record.samples[static_cast<std::size_t>(k)], partition));
    for (std::int64_t k = 0; k < verdict.period; ++k)
        per.push_back(partition_symbol(
            record.samples[static_cast<std::size_t>(1 + verdict.preperiod + k)], partition));
    return SymSeq::exact(std::move(pre), std::move(per));
}

std::vector<std::complex<double>> sample_julia(const ComplexParam& param, std::int64_t count,
                                               std::uint64_t seed) {
    if (count < 1) throw ContractViolation("sample count must be >= 1");
    std::mt19937_64 rng(seed);
    // Start at the beta fixed point (1 + sqrt(1-4c))/2, which lies in J_c.
    std::complex<double> z = (1.0 + std::sqrt(std::complex<double>(1.0, 0.0) - 4.0 * param.c)) / 2.0;
    constexpr int kBurnIn = 50;
    std::vector<std::complex<double>> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < kBurnIn + count; ++i) {
        z = std::sqrt(z - param.c);
        if (rng() & 1) z = -z;
        if (i >= kBurnIn) out.push_back(z);
    }
    return out;
}

JuliaImage render(const ComplexParam& param, const ImageSpec& spec) {
    if (spec.width < 1 || spec.height < 1) throw ContractViolation("image needs positive dimensions");
    if (spec.max_iter < 1) throw ContractViolation("max_iter must be >= 1");
    JuliaImage image;
    image.width = spec.width;
    image.height = spec.height;
    image.max_iter = spec.max_iter;
    image.escape_counts.assign(static_cast<std::size_t>(spec.width * spec.height), 0);

    const double step = spec.span / static_cast<double>(spec.width);
    auto render_rows = [&](std::int64_t row_begin, std::int64_t row_end) {
        for (std::int64_t py = row_begin; py < row_end; ++py) {
            for (std::int64_t px = 0; px < spec.width; ++px) {
                const double re =
                    spec.center.real() + (static_cast<double>(px) + 0.5 - spec.width / 2.0) * step;
                const double im =
                    spec.center.imag() - (static_cast<double>(py) + 0.5 - spec.height / 2.0) * step;
                std::complex<double> z{re, im};
                std::uint32_t n = 0;
                while (n < spec.max_iter && std::norm(z) <= 4.0) {
                    z = z * z + param.c;
                    ++n;
                }
                image.escape_counts[static_cast<std::size_t>(py * spec.width + px)] = n;
            }
        }
    };

    const std::int64_t workers =
        std::min<std::int64_t>(spec.height, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        render_rows(0, spec.height);
    } else {
        std::vector<std::thread> pool;
        const std::int64_t chunk = (spec.height + workers - 1) / workers;
        for (std::int64_t w = 0; w < workers; ++w) {
            const std::int64_t lo = w * chunk;
            const std::int64_t hi = std::min(spec.height, lo + chunk);
            if (lo < hi) pool.emplace_back(render_rows, lo, hi);
        }
        for (auto& t : pool) t.join();
    }
    return image;
}

void write_ppm(std::ostream& out, const JuliaImage& image) {
    out << "P6\n" << image.width << " " << image.height << "\n255\n";
    for (std::uint32_t count : image.escape_counts) {
        const auto gray = static_cast<std::uint8_t>(
            (static_cast<std::uint64_t>(count) * 255 + image.max_iter / 2) /
            static_cast<std::uint64_t>(image.max_iter));
        const char px[3] = {static_cast<char>(gray), static_cast<char>(gray), static_cast<char>(gray)};
        out.write(px, 3);
    }
}

PpmImage read_ppm(std::istream& in) {
    std::string magic;
    in >> magic;
    if (magic != "P6") throw ParseError("not a P6 PPM stream");
    PpmImage image;
    in >> image.width >> image.height >> image.maxval;
    in.get();  // single whitespace after maxval
    if (image.width < 1 || image.height < 1) throw ParseError("bad PPM dimensions");
    image.bytes.resize(static_cast<std::size_t>(image.width * image.height * 3));
    in.read(reinterpret_cast<char*>(image.bytes.data()), static_cast<std::streamsize>(image.bytes.size()));
    if (in.gcount() != static_cast<std::streamsize>(image.bytes.size()))
        throw ParseError("truncated PPM payload");
    return image;
}

CrosscheckReport crosscheck(const ComplexParam& param, const PartitionSpec& partition,
                            std::int64_t itinerary_depth, std::int64_t sample_count, std::uint64_t seed) {
    CrosscheckReport report;
    report.tau = extract_kneading(param, partition, 64);
    report.acceptability = is_lambda_acceptable(report.tau, 30);
    report.strictly_preperiodic = !report.tau.preperiod().empty();
    report.total_samples = sample_count;
    if (!report.acceptability.verdict) return report;

    const DendriteSpace space = make_space(report.tau, 64);
    const auto points = sample_julia(param, sample_count, seed);
    // Materialize past the checked depth so every shift n <= depth keeps a
    // full separator window; short windows near the end would misread
    // orbits that pass close to the critical point.
    const std::int64_t materialize = itinerary_depth + 16;
    for (const auto& w : points) {
        FiniteWord itinerary;
        bool ambiguous = false;
        std::complex<double> z = w;
        for (std::int64_t k = 0; k <= materialize; ++k) {
            try {
                itinerary.push_back(partition_symbol(z, partition));
            } catch (const PartitionAmbiguity&) {
                ambiguous = true;
                break;
            }
            z = z * z + param.c;
        }
        if (ambiguous) {
            ++report.ambiguous;
            continue;
        }
        SymSeq point = SymSeq::from_generator(make_table_generator("itinerary", itinerary));
        try {
            if (is_admissible(point, space, itinerary_depth).verdict) ++report.admissible;
        } catch (const ContractViolation&) {
            // Inconsistent itinerary (stray star) counts as a failure.
        }
    }
    report.admissible_rate =
        sample_count > 0 ? static_cast<double>(report.admissible) / static_cast<double>(sample_count) : 0.0;
    return report;
}

}  // namespace dendrite
