#include "ginet/probmodel.hpp"

#include <cmath>
#include <string>

#include "ginet/error.hpp"

namespace ginet {

namespace {

bool is_probability(double p) { return std::isfinite(p) && p > 0.0 && p <= 1.0; }

void check_joint(const Grid& joint, const Levels& la, const Levels& lb, ErrorCode code) {
    if (joint.rows() != la.size() || joint.cols() != lb.size()) {
        throw Error(code, "jointFactorDist does not cover the level grid");
    }
    for (double p : joint.cells()) {
        if (!std::isfinite(p) || p < 0.0) {
            throw Error(code, "jointFactorDist entries must be finite and non-negative");
        }
    }
    if (std::abs(joint.sum() - 1.0) > kIdentityTolerance) {
        throw Error(code, "jointFactorDist must sum to 1");
    }
}

void check_levels(const Levels& levels, const char* which, ErrorCode code) {
    if (levels.size() < 2) {
        throw Error(code, std::string(which) + " needs at least two levels");
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        for (std::size_t j = i + 1; j < levels.size(); ++j) {
            if (levels.name(i) == levels.name(j)) {
                throw Error(code, std::string(which) + " has duplicate level '" + levels.name(i) + "'");
            }
        }
    }
}

const Grid& require_joint(const ObservableTable& table) {
    if (!table.jointFactorDist) {
        throw Error(ErrorCode::MissingDistribution, "table carries no jointFactorDist");
    }
    return *table.jointFactorDist;
}

double cell(const ObservableTable& table, std::size_t a, std::size_t b) {
    double s = table.survival(a, b);
    if (std::isnan(s)) {
        throw Error(ErrorCode::AbsentCell, "survival cell (" + table.levelsA.name(a) + ", " +
                                               table.levelsB.name(b) + ") is absent");
    }
    return s;
}

double positive_cell(const ObservableTable& table, std::size_t a, std::size_t b) {
    double s = cell(table, a, b);
    if (!(s > 0.0)) {
        throw Error(ErrorCode::ZeroSurvival, "survival cell (" + table.levelsA.name(a) + ", " +
                                                 table.levelsB.name(b) + ") is zero; log J undefined");
    }
    return s;
}

void check_index(const Levels& levels, std::size_t i) {
    if (i >= levels.size()) {
        throw Error(ErrorCode::LevelNotFound, "level index " + std::to_string(i) + " out of range");
    }
}

// Neutrality with the two conditionals already resolved.
double neutrality_from(const ObservableTable& table, std::size_t x, std::size_t y,
                       const std::vector<double>& b_given_x, const std::vector<double>& a_given_y) {
    const std::size_t na = table.levelsA.size();
    const std::size_t nb = table.levelsB.size();
    double surv_x = 0.0;
    for (std::size_t b = 0; b < nb; ++b) surv_x += cell(table, x, b) * b_given_x[b];
    double surv_y = 0.0;
    for (std::size_t a = 0; a < na; ++a) surv_y += cell(table, a, y) * a_given_y[a];

    double denom = 0.0;
    for (std::size_t a = 0; a < na; ++a) {
        if (a_given_y[a] == 0.0) continue;
        double row = 0.0;
        for (std::size_t b = 0; b < nb; ++b) row += cell(table, a, b) * b_given_x[b];
        denom += a_given_y[a] * row;
    }
    if (!(denom > 0.0)) {
        throw Error(ErrorCode::DegenerateDistribution, "neutrality denominator is zero");
    }
    return surv_x * surv_y / denom;
}

}  // namespace

void TwoFactorEffectModel::validate() const {
    constexpr auto code = ErrorCode::InvalidModel;
    check_levels(levelsA, "levelsA", code);
    check_levels(levelsB, "levelsB", code);
    if (survivalA.size() != levelsA.size() || survivalB.size() != levelsB.size()) {
        throw Error(code, "per-level survival vectors must match the level sets");
    }
    for (double p : survivalA) {
        if (!is_probability(p)) throw Error(code, "survivalA entries must lie in (0, 1]");
    }
    for (double p : survivalB) {
        if (!is_probability(p)) throw Error(code, "survivalB entries must lie in (0, 1]");
    }
    if (!is_probability(survivalZ)) throw Error(code, "survivalZ must lie in (0, 1]");
    check_joint(jointFactorDist, levelsA, levelsB, code);
}

void ObservableTable::validate() const {
    constexpr auto code = ErrorCode::InvalidModel;
    check_levels(levelsA, "levelsA", code);
    check_levels(levelsB, "levelsB", code);
    if (survival.rows() != levelsA.size() || survival.cols() != levelsB.size()) {
        throw Error(code, "survival table does not cover the level grid");
    }
    for (double p : survival.cells()) {
        if (!is_probability(p)) throw Error(code, "survival entries must lie in (0, 1]");
    }
    if (jointFactorDist) check_joint(*jointFactorDist, levelsA, levelsB, code);
}

double null_joint_survival(const TwoFactorEffectModel& model, std::size_t a, std::size_t b) {
    check_index(model.levelsA, a);
    check_index(model.levelsB, b);
    return model.survivalA[a] * model.survivalB[b] * model.survivalZ;
}

double null_joint_survival(const TwoFactorEffectModel& model, std::string_view a, std::string_view b) {
    return null_joint_survival(model, model.levelsA.index(a), model.levelsB.index(b));
}

ObservableTable observables_from_model(const TwoFactorEffectModel& model) {
    model.validate();
    ObservableTable table;
    table.levelsA = model.levelsA;
    table.levelsB = model.levelsB;
    table.survival = Grid(model.levelsA.size(), model.levelsB.size());
    for (std::size_t a = 0; a < model.levelsA.size(); ++a) {
        for (std::size_t b = 0; b < model.levelsB.size(); ++b) {
            table.survival(a, b) = null_joint_survival(model, a, b);
        }
    }
    table.jointFactorDist = model.jointFactorDist;
    return table;
}

std::vector<double> conditional_distribution(const Grid& joint, std::size_t level, Axis axis) {
    const std::size_t n = axis == Axis::A ? joint.cols() : joint.rows();
    if (level >= (axis == Axis::A ? joint.rows() : joint.cols())) {
        throw Error(ErrorCode::LevelNotFound, "conditioning level out of range");
    }
    std::vector<double> cond(n);
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cond[i] = axis == Axis::A ? joint(level, i) : joint(i, level);
        mass += cond[i];
    }
    if (!(mass > 0.0)) {
        throw Error(ErrorCode::ZeroMass, "conditioning level has zero probability mass");
    }
    for (double& c : cond) c /= mass;
    return cond;
}

double marginal_survival(const ObservableTable& table, std::size_t level, Axis axis) {
    const Grid& joint = require_joint(table);
    check_index(axis == Axis::A ? table.levelsA : table.levelsB, level);
    const auto cond = conditional_distribution(joint, level, axis);
    double s = 0.0;
    for (std::size_t i = 0; i < cond.size(); ++i) {
        s += (axis == Axis::A ? cell(table, level, i) : cell(table, i, level)) * cond[i];
    }
    return s;
}

double marginal_survival(const ObservableTable& table, std::string_view level, Axis axis) {
    const Levels& levels = axis == Axis::A ? table.levelsA : table.levelsB;
    return marginal_survival(table, levels.index(level), axis);
}

double neutrality(const ObservableTable& table, std::size_t a, std::size_t b) {
    const Grid& joint = require_joint(table);
    check_index(table.levelsA, a);
    check_index(table.levelsB, b);
    return neutrality_from(table, a, b, conditional_distribution(joint, a, Axis::A),
                           conditional_distribution(joint, b, Axis::B));
}

double neutrality(const ObservableTable& table, std::string_view a, std::string_view b) {
    return neutrality(table, table.levelsA.index(a), table.levelsB.index(b));
}

double spurious_risk(std::span<const double> risk, std::span<const double> cond) {
    if (risk.size() != cond.size()) {
        throw Error(ErrorCode::InvalidArgument, "risk and conditional distribution differ in length");
    }
    double mass = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < risk.size(); ++i) {
        if (!(cond[i] >= 0.0)) throw Error(ErrorCode::Normalization, "negative conditional probability");
        mass += cond[i];
        total += risk[i] * cond[i];
    }
    if (std::abs(mass - 1.0) > 1e-9) {
        throw Error(ErrorCode::Normalization, "conditional distribution does not sum to 1");
    }
    return total;
}

double j_ratio(const ObservableTable& table, std::size_t a, std::size_t b) {
    check_index(table.levelsA, a);
    check_index(table.levelsB, b);
    if (a == 0 || b == 0) {
        throw Error(ErrorCode::InvalidArgument, "J is defined for non-reference levels only");
    }
    const double ref = positive_cell(table, 0, 0);
    const double only_a = positive_cell(table, a, 0);
    const double only_b = positive_cell(table, 0, b);
    const double both = positive_cell(table, a, b);
    return (only_a * only_b) / (ref * both);
}

double j_ratio(const ObservableTable& table, std::string_view a, std::string_view b) {
    return j_ratio(table, table.levelsA.index(a), table.levelsB.index(b));
}

LogLinearDecomposition loglinear_decompose(const ObservableTable& table) {
    const std::size_t na = table.levelsA.size();
    const std::size_t nb = table.levelsB.size();
    Grid logs(na, nb);
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t b = 0; b < nb; ++b) logs(a, b) = std::log(positive_cell(table, a, b));
    }

    LogLinearDecomposition d;
    d.mu = logs(0, 0);
    d.alpha.assign(na, 0.0);
    d.beta.assign(nb, 0.0);
    d.delta = Grid(na, nb, 0.0);
    for (std::size_t a = 1; a < na; ++a) d.alpha[a] = logs(a, 0) - d.mu;
    for (std::size_t b = 1; b < nb; ++b) d.beta[b] = logs(0, b) - d.mu;
    for (std::size_t a = 1; a < na; ++a) {
        for (std::size_t b = 1; b < nb; ++b) {
            d.delta(a, b) = d.alpha[a] + d.beta[b] - (logs(a, b) - d.mu);
        }
    }
    return d;
}

NeutralityCheck is_neutral(const ObservableTable& table, double tol) {
    const Grid& joint = require_joint(table);
    const std::size_t na = table.levelsA.size();
    const std::size_t nb = table.levelsB.size();

    std::vector<std::vector<double>> b_given_a(na);
    std::vector<std::vector<double>> a_given_b(nb);
    for (std::size_t a = 0; a < na; ++a) b_given_a[a] = conditional_distribution(joint, a, Axis::A);
    for (std::size_t b = 0; b < nb; ++b) a_given_b[b] = conditional_distribution(joint, b, Axis::B);

    NeutralityCheck check;
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t b = 0; b < nb; ++b) {
            const double dev =
                std::abs(cell(table, a, b) - neutrality_from(table, a, b, b_given_a[a], a_given_b[b]));
            if (dev > check.maxDeviation) {
                check.maxDeviation = dev;
                check.worstA = a;
                check.worstB = b;
            }
        }
    }
    check.neutral = check.maxDeviation <= tol;
    return check;
}

}  // namespace ginet
