#include "ginet/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "ginet/error.hpp"

namespace ginet {

namespace {

void require_finite(double f01, double f10, double f11) {
    if (!std::isfinite(f01) || !std::isfinite(f10) || !std::isfinite(f11)) {
        throw Error(ErrorCode::InvalidFitness, "fitness values must be finite");
    }
}

Sign sign_of(double v, bool called) {
    if (!called) return Sign::None;
    return v > 0.0 ? Sign::Positive : Sign::Negative;
}

}  // namespace

void Thresholds::validate() const {
    if (!(mThresh > 0.0) || !std::isfinite(mThresh)) {
        throw Error(ErrorCode::InvalidArgument, "m threshold must be positive");
    }
    if (!(jThresh > 0.0) || !std::isfinite(jThresh)) {
        throw Error(ErrorCode::InvalidArgument, "j threshold must be positive");
    }
    if (!(pMax > 0.0 && pMax <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "p-value cutoff must lie in (0, 1]");
    }
}

std::string_view to_string(Quadrant q) noexcept {
    switch (q) {
        case Quadrant::MJ: return "MJ";
        case Quadrant::MbarJ: return "MbarJ";
        case Quadrant::MJbar: return "MJbar";
        case Quadrant::MbarJbar: return "MbarJbar";
    }
    return "?";
}

std::string_view to_string(Sign s) noexcept {
    switch (s) {
        case Sign::Positive: return "positive";
        case Sign::Negative: return "negative";
        case Sign::None: return "none";
    }
    return "?";
}

std::string_view to_string(PositiveType t) noexcept {
    switch (t) {
        case PositiveType::Masking: return "masking";
        case PositiveType::Suppressor: return "suppressor";
        case PositiveType::NotApplicable: return "na";
    }
    return "?";
}

std::string_view to_string(Measure m) noexcept { return m == Measure::M ? "M" : "J"; }

Quadrant parse_quadrant(std::string_view s) {
    if (s == "MJ") return Quadrant::MJ;
    if (s == "MbarJ") return Quadrant::MbarJ;
    if (s == "MJbar") return Quadrant::MJbar;
    if (s == "MbarJbar") return Quadrant::MbarJbar;
    throw Error(ErrorCode::InvalidArgument, "unknown quadrant '" + std::string(s) + "'");
}

Measure parse_measure(std::string_view s) {
    if (s == "M" || s == "m") return Measure::M;
    if (s == "J" || s == "j") return Measure::J;
    throw Error(ErrorCode::InvalidArgument, "unknown measure '" + std::string(s) + "'");
}

double m_score(double f01, double f10, double f11) {
    require_finite(f01, f10, f11);
    return f11 - f01 * f10;
}

double j_score(double f01, double f10, double f11) {
    require_finite(f01, f10, f11);
    return (1.0 + f11) - (f01 + f10);
}

InteractionScores score(double f01, double f10, double f11) {
    return {m_score(f01, f10, f11), j_score(f01, f10, f11)};
}

RateSurvival survival_from_rate(double rate, double t) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
        throw Error(ErrorCode::Domain, "rate must be finite and non-negative");
    }
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw Error(ErrorCode::Domain, "time must be finite and positive");
    }
    RateSurvival r;
    r.survival = std::exp(-rate * t);
    r.effect = -std::expm1(-rate * t);
    return r;
}

Quadrant classify_quadrant(const InteractionScores& scores, double pValue, const Thresholds& th) {
    const bool significant = pValue < th.pMax;
    const bool byM = significant && std::abs(scores.m) > th.mThresh;
    const bool byJ = significant && std::abs(scores.logJ) > th.jThresh;
    if (byM && byJ) return Quadrant::MJ;
    if (byJ) return Quadrant::MbarJ;
    if (byM) return Quadrant::MJbar;
    return Quadrant::MbarJbar;
}

PositiveType positive_type(double f01, double f10, double f11) {
    return f11 > std::min(f01, f10) ? PositiveType::Suppressor : PositiveType::Masking;
}

ScoredPair classify_pair(std::string geneA, std::string geneB, InteractionScores scores, double pValue,
                         double f01, double f10, double f11, const Thresholds& th) {
    ScoredPair p;
    p.geneA = std::move(geneA);
    p.geneB = std::move(geneB);
    p.scores = scores;
    p.pValue = pValue;
    p.f01 = f01;
    p.f10 = f10;
    p.f11 = f11;
    p.quadrant = classify_quadrant(scores, pValue, th);
    p.signM = sign_of(scores.m, m_interacting(p.quadrant));
    p.signJ = sign_of(scores.logJ, j_interacting(p.quadrant));
    if (p.signM == Sign::Positive) p.posTypeM = positive_type(f01, f10, f11);
    if (p.signJ == Sign::Positive) p.posTypeJ = positive_type(f01, f10, f11);
    return p;
}

ScoredPair score_pair(std::string geneA, std::string geneB, double f01, double f10, double f11,
                      double pValue, const Thresholds& th) {
    return classify_pair(std::move(geneA), std::move(geneB), score(f01, f10, f11), pValue, f01, f10, f11,
                         th);
}

JCalibration calibrate_j_threshold(std::span<const ScoredPair> pairs, const Thresholds& th) {
    if (pairs.empty()) throw Error(ErrorCode::EmptyDataset, "cannot calibrate on an empty dataset");

    JCalibration cal;
    std::vector<double> js;
    for (const auto& p : pairs) {
        if (!(p.pValue < th.pMax)) continue;
        js.push_back(std::abs(p.scores.logJ));
        if (std::abs(p.scores.m) > th.mThresh) ++cal.mCount;
    }
    std::sort(js.begin(), js.end(), std::greater<>());

    // Any tau below js[mCount] lets at least mCount + 1 pairs through.
    cal.tau = cal.mCount < js.size() ? js[cal.mCount] : 0.0;
    cal.jCount = static_cast<std::size_t>(
        std::count_if(js.begin(), js.end(), [&](double v) { return v > cal.tau; }));
    cal.exactMatch = cal.jCount == cal.mCount;
    cal.tieAtBoundary = cal.mCount < js.size() && cal.jCount < cal.mCount;
    return cal;
}

}  // namespace ginet
