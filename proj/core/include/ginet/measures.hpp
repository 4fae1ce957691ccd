#pragma once
// Fitness-based interaction scores. Fitness values are growth rates relative
// to wild type (wild type == 1): f01 is the query single mutant, f10 the array
// single mutant and f11 the double mutant.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace ginet {

struct InteractionScores {
    double m = 0.0;     // multiplicative on rates: f11 - f01 * f10
    double logJ = 0.0;  // additive on rates: (1 + f11) - (f01 + f10)
};

struct Thresholds {
    double mThresh = 0.08;
    double jThresh = 0.0886;
    double pMax = 0.05;

    // Throws Error(InvalidArgument) unless both thresholds are positive and
    // pMax lies in (0, 1].
    void validate() const;
};

enum class Quadrant { MJ, MbarJ, MJbar, MbarJbar };
enum class Sign { Positive, Negative, None };
enum class PositiveType { Masking, Suppressor, NotApplicable };
enum class Measure { M, J };

std::string_view to_string(Quadrant q) noexcept;
std::string_view to_string(Sign s) noexcept;
std::string_view to_string(PositiveType t) noexcept;
std::string_view to_string(Measure m) noexcept;
Quadrant parse_quadrant(std::string_view s);
Measure parse_measure(std::string_view s);

constexpr bool m_interacting(Quadrant q) noexcept { return q == Quadrant::MJ || q == Quadrant::MJbar; }
constexpr bool j_interacting(Quadrant q) noexcept { return q == Quadrant::MJ || q == Quadrant::MbarJ; }
constexpr bool interacting(Quadrant q, Measure m) noexcept {
    return m == Measure::M ? m_interacting(q) : j_interacting(q);
}

struct RateSurvival {
    double effect = 0.0;    // Pr(at least one duplication within t)
    double survival = 1.0;  // complement, exp(-rate * t)
};

double m_score(double f01, double f10, double f11);
double j_score(double f01, double f10, double f11);
InteractionScores score(double f01, double f10, double f11);

RateSurvival survival_from_rate(double rate, double t = 1.0);

Quadrant classify_quadrant(const InteractionScores& scores, double pValue, const Thresholds& th);

// Suppressor iff f11 > min(f01, f10); masking otherwise. Callers apply this
// only to pairs already called positive under the measure being typed.
PositiveType positive_type(double f01, double f10, double f11);

// One gene pair with everything the downstream analyses need.
struct ScoredPair {
    std::string geneA;
    std::string geneB;
    InteractionScores scores;
    double pValue = 1.0;
    Quadrant quadrant = Quadrant::MbarJbar;
    Sign signM = Sign::None;
    Sign signJ = Sign::None;
    PositiveType posTypeM = PositiveType::NotApplicable;
    PositiveType posTypeJ = PositiveType::NotApplicable;
    double f01 = 1.0;
    double f10 = 1.0;
    double f11 = 1.0;

    bool self_pair() const noexcept { return geneA == geneB; }
    double value(Measure m) const noexcept { return m == Measure::M ? scores.m : scores.logJ; }
    Sign sign(Measure m) const noexcept { return m == Measure::M ? signM : signJ; }
};

// Classifies precomputed scores (e.g. read back from a scores file).
ScoredPair classify_pair(std::string geneA, std::string geneB, InteractionScores scores, double pValue,
                         double f01, double f10, double f11, const Thresholds& th);

// Scores and classifies a fitness triple.
ScoredPair score_pair(std::string geneA, std::string geneB, double f01, double f10, double f11,
                      double pValue, const Thresholds& th);

struct JCalibration {
    double tau = 0.0;
    std::size_t mCount = 0;  // significant pairs with |m| > mThresh
    std::size_t jCount = 0;  // significant pairs with |logJ| > tau
    bool exactMatch = false;
    bool tieAtBoundary = false;
};

// Smallest tau >= 0 such that the J-significant count does not exceed the
// M-significant count. Ties at the boundary resolve towards fewer J calls.
JCalibration calibrate_j_threshold(std::span<const ScoredPair> pairs, const Thresholds& th);

}  // namespace ginet
