#pragma once
// Two-factor effect model and the observable-only no-interaction machinery:
// the factorized null, the neutrality function, the J ratio and the
// log-linear decomposition of the survival table.
//
// Conventions: "survival" is Pr(no effect | a, b). Factor A indexes rows,
// factor B indexes columns, and level 0 of each factor is the reference.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ginet/grid.hpp"

namespace ginet {

inline constexpr double kIdentityTolerance = 1e-12;

enum class Axis { A, B };

// Generative (mechanistic) model. Per-factor survivals are the unobservable
// Pr(not E_A | a), Pr(not E_B | b); survivalZ is the background term.
struct TwoFactorEffectModel {
    Levels levelsA;
    Levels levelsB;
    std::vector<double> survivalA;
    std::vector<double> survivalB;
    double survivalZ = 1.0;
    Grid jointFactorDist;

    // Throws Error(InvalidModel) on any invariant violation.
    void validate() const;
};

struct ObservableTable {
    Levels levelsA;
    Levels levelsB;
    Grid survival;
    std::optional<Grid> jointFactorDist;

    // Full invariant check. Empirical tables may carry NaN (absent) cells and
    // skip this; operations then reject absent cells they touch.
    void validate() const;
};

struct LogLinearDecomposition {
    double mu = 0.0;
    std::vector<double> alpha;  // alpha[0] == 0
    std::vector<double> beta;   // beta[0] == 0
    Grid delta;                 // zero on row 0 and column 0

    // log survival(a, b) predicted by mu + alpha + beta - delta.
    double log_survival(std::size_t a, std::size_t b) const {
        return mu + alpha[a] + beta[b] - delta(a, b);
    }
};

struct NeutralityCheck {
    bool neutral = false;
    double maxDeviation = 0.0;
    std::size_t worstA = 0;
    std::size_t worstB = 0;
};

double null_joint_survival(const TwoFactorEffectModel& model, std::size_t a, std::size_t b);
double null_joint_survival(const TwoFactorEffectModel& model, std::string_view a, std::string_view b);

ObservableTable observables_from_model(const TwoFactorEffectModel& model);

// Conditional distribution of the other factor given one level of `axis`,
// derived by normalizing a row (axis A) or column (axis B) of the joint.
std::vector<double> conditional_distribution(const Grid& joint, std::size_t level, Axis axis);

// Pr(not E | x) on the observables, marginalizing the other factor with its
// conditional distribution given x.
double marginal_survival(const ObservableTable& table, std::size_t level, Axis axis);
double marginal_survival(const ObservableTable& table, std::string_view level, Axis axis);

double neutrality(const ObservableTable& table, std::size_t a, std::size_t b);
double neutrality(const ObservableTable& table, std::string_view a, std::string_view b);

// Risk propagated onto a factor through the population structure:
// sum_b risk[b] * cond[b]. `cond` must sum to one within 1e-9.
double spurious_risk(std::span<const double> risk, std::span<const double> cond);

double j_ratio(const ObservableTable& table, std::size_t a, std::size_t b);
double j_ratio(const ObservableTable& table, std::string_view a, std::string_view b);

LogLinearDecomposition loglinear_decompose(const ObservableTable& table);

NeutralityCheck is_neutral(const ObservableTable& table, double tol = kIdentityTolerance);

}  // namespace ginet
