#pragma once

// Real polynomial partitioning of the plane by iterated polynomial ham-sandwich bisection,
// cell location by sign vectors, curve/cell crossing profiles, and an incidence counter
// that splits the count along the partition. Real geometry, so rational inputs only.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "incidence/bipoly.hpp"
#include "incidence/incidence.hpp"
#include "incidence/points.hpp"
#include "incidence/scalar.hpp"

namespace incidence {

using QPoly = BivariatePolynomial<Rational>;
using QPoint = Point<Rational>;
using SignVector = std::vector<int>;  // one entry in {-1, +1} per factor

/// Degree of the level-j bisector: min r with C(r+2, 2) - 1 >= 2^(j-1).
int level_degree(int j);
/// Sum of level_degree(j) for j = 1..t.
int max_partition_degree(int t);
/// 1 + (d-1)(d-2)/2.
int harnack_bound(int d);

struct PartitionDegree {
    bool skip = false;   // outside |P|^(1/2) <= |L| <= |P|^A: use the plain bounds instead
    std::string reason;  // why skip was chosen
    long D = 0;
    int levels = 0;      // largest t with max_partition_degree(t) <= D
};

PartitionDegree choose_partition_degree(std::uint64_t num_points, std::uint64_t num_curves, int A);

struct Cell {
    SignVector signs;
    std::vector<std::size_t> points;  // indices into PartitionResult::points
};

struct PartitionResult {
    std::vector<QPoint> points;
    std::vector<QPoly> factors;                  // in the input coordinates
    int levels = 0;
    std::map<SignVector, Cell> cells;            // nonempty cells only
    std::vector<std::size_t> boundary_points;    // some factor vanishes: P_alg

    QPoly Q() const;
    int degree() const;
    std::size_t max_occupancy() const;
    /// Cell of each point, nullopt for boundary points.
    std::vector<std::optional<SignVector>> point_cells() const;
};

struct PartitionOptions {
    std::uint64_t seed = 0x5eed;
    int restarts = 48;                 // solver restarts per level
    std::size_t exhaustive_limit = 4000;  // max subsets tried by the exhaustive rung
    int random_candidates = 400;       // perturbed candidates after that
};

/// Levels are capped at 6 (the bisector degree grows quickly after that).
constexpr int max_partition_levels = 6;

/// Throws ConstructionFailure when the search ladder cannot bisect some level, InvalidInput
/// on duplicate points or t outside [0, max_partition_levels].
PartitionResult build_partition(const std::vector<QPoint>& points, int t, const PartitionOptions& opts = {});

/// Cells of `points` with respect to an explicit factor list.
PartitionResult partition_from_factors(const std::vector<QPoint>& points, std::vector<QPoly> factors, int levels = -1);

/// nullopt means the point lies on Z(Q).
std::optional<SignVector> locate(const QPoint& p, const std::vector<QPoly>& factors);
inline std::optional<SignVector> locate(const QPoint& p, const PartitionResult& part) { return locate(p, part.factors); }

std::string sign_string(const SignVector& s);

struct CrossingProfile {
    bool contained = false;                  // shares a component with some factor
    std::optional<std::size_t> containing_factor;
    std::set<SignVector> visited;
    std::size_t crossings = 0;               // distinct real abscissae of c meeting Z(Q), after the shear
    int degree = 0;
    std::size_t bound = 0;                   // degree * deg Q + harnack_bound(degree)
    bool within_bound = true;
};

/// Cells visited by the real points of c. Isolated real points of c at irrational abscissae
/// are not sampled.
CrossingProfile curve_cells(const QPoly& c, const PartitionResult& part);

struct PartitionedCount {
    std::uint64_t cell_cell = 0;   // P_cell x L_cell, restricted to visited cells
    std::uint64_t alg_cell = 0;    // P_alg x L_cell
    std::uint64_t alg_alg = 0;     // P_alg x L_alg
    std::uint64_t cell_alg = 0;    // P_cell x L_alg
    std::vector<CrossingProfile> profiles;
    std::vector<std::uint64_t> per_curve;
    std::size_t sum_Li = 0;        // sum over transverse curves of visited cells
    std::size_t curves_alg = 0;

    std::uint64_t total() const { return cell_cell + alg_cell + alg_alg + cell_alg; }
};

/// Throws InternalConsistencyError if the split total differs from brute force.
PartitionedCount incidence_count_partitioned(const PointConfiguration<Rational>& cfg, const PartitionResult& part,
                                             unsigned threads = 0);

struct LedgerStep {
    std::size_t curves = 0;      // |L| at the start of the step
    std::size_t points = 0;      // |P| at the start of the step
    bool closure = false;        // direct count, no partition
    long D = 0;
    int levels = 0;
    int degree = 0;              // realized deg Q
    std::uint64_t accounted = 0;
    std::size_t curves_alg = 0;
    std::size_t points_alg = 0;
};

struct DyadicLedger {
    std::vector<LedgerStep> steps;
    std::uint64_t total = 0;
};

struct LedgerOptions {
    PartitionOptions partition;
    int max_levels = 4;
    unsigned threads = 0;
    std::vector<QPoly> first_factors;  // partition of the first step; bisected afresh when empty
};

/// Partition, count everything except P_alg x L_alg, recurse on (P_alg, L_alg).
DyadicLedger dyadic_ledger(const PointConfiguration<Rational>& cfg, const LedgerOptions& opts = {});

/// One factor per line as exact coefficient text.
std::string dump_factors(const PartitionResult& part);

} // namespace incidence
