#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dendrite/space.hpp"

namespace dendrite {

struct ComplexParam {
    std::complex<double> c{0.0, 0.0};
    double tolerance = 1e-9;
};

/// Critical orbit z_0 = 0, z_1 = c, ... Escape is flagged at |z| > 2 (the
/// orbit then diverges); cycle entry is measured from the critical value
/// z_1, so c = i reports preperiod 1, period 2 and c = 0 reports 0, 1.
struct OrbitRecord {
    std::vector<std::complex<double>> samples;
    std::optional<std::int64_t> preperiod;
    std::optional<std::int64_t> period;
    std::optional<std::int64_t> escaped_at;
};

OrbitRecord iterate_orbit(const ComplexParam& param, std::int64_t steps);

enum class MisiurewiczKind : std::uint8_t { Misiurewicz, PeriodicCritical, Escapes, Undecided };

struct MisiurewiczVerdict {
    MisiurewiczKind kind = MisiurewiczKind::Undecided;
    std::int64_t preperiod = 0;
    std::int64_t period = 0;
    double tolerance = 0.0;
};

MisiurewiczVerdict misiurewicz_detect(const ComplexParam& param, std::int64_t steps);

/// Half-plane itinerary partition: One when Im(z e^{-i theta}) > 0, Zero
/// when < 0, Star within star_tolerance of the critical point 0 (the
/// near-zero test wins). A point near the partition line but not near 0 is
/// ambiguous and raises PartitionAmbiguity.
struct PartitionSpec {
    double theta = 0.0;
    double star_tolerance = 1e-6;
};

class PartitionAmbiguity : public Error {
public:
    using Error::Error;
};

Symbol partition_symbol(std::complex<double> z, const PartitionSpec& partition);

/// Itinerary of the critical value folded into EXACT preperiod/period form
/// through the detected cycle. Requires a MISIUREWICZ verdict.
SymSeq extract_kneading(const ComplexParam& param, const PartitionSpec& partition, std::int64_t depth);

/// Julia set samples by random-sign inverse iteration z <- +-sqrt(z - c),
/// burn-in 50 steps, deterministic per seed.
std::vector<std::complex<double>> sample_julia(const ComplexParam& param, std::int64_t count,
                                               std::uint64_t seed);

struct ImageSpec {
    std::int64_t width = 256;
    std::int64_t height = 256;
    std::complex<double> center{0.0, 0.0};
    double span = 4.0;  // width of the viewport on the real axis
    std::int64_t max_iter = 64;
};

struct JuliaImage {
    std::int64_t width = 0;
    std::int64_t height = 0;
    std::int64_t max_iter = 0;
    std::vector<std::uint32_t> escape_counts;  // row-major; max_iter = never escaped
};

JuliaImage render(const ComplexParam& param, const ImageSpec& spec);

/// Binary PPM (P6), maxval 255, grayscale by normalized escape count.
void write_ppm(std::ostream& out, const JuliaImage& image);

struct PpmImage {
    std::int64_t width = 0;
    std::int64_t height = 0;
    std::int64_t maxval = 0;
    std::vector<std::uint8_t> bytes;
};

PpmImage read_ppm(std::istream& in);

/// Extracted tau run through the acceptability checker and classifier, and
/// sampled itineraries checked admissible against it. Failure rates are
/// reported, not asserted away.
struct CrosscheckReport {
    SymSeq tau;
    Verification acceptability;
    bool strictly_preperiodic = false;
    std::int64_t total_samples = 0;
    std::int64_t admissible = 0;
    std::int64_t ambiguous = 0;
    double admissible_rate = 0.0;
};

CrosscheckReport crosscheck(const ComplexParam& param, const PartitionSpec& partition,
                            std::int64_t itinerary_depth, std::int64_t sample_count = 200,
                            std::uint64_t seed = 1);

}  // namespace dendrite
