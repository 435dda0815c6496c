#include "incidence/partition.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "incidence/errors.hpp"
#include "incidence/linalg.hpp"
#include "incidence/parallel.hpp"
#include "incidence/real_roots.hpp"
#include "incidence/rng.hpp"
#include "incidence/veronese.hpp"

namespace incidence {

int level_degree(int j)
{
    if (j < 1) throw InvalidInput("partition levels are numbered from 1");
    const long need = 1L << (j - 1);
    int r = 1;
    while ((r + 2L) * (r + 1L) / 2 - 1 < need) ++r;
    return r;
}

int max_partition_degree(int t)
{
    if (t < 0) throw InvalidInput("negative level count");
    int sum = 0;
    for (int j = 1; j <= t; ++j) sum += level_degree(j);
    return sum;
}

int harnack_bound(int d)
{
    if (d < 1) throw InvalidInput("Harnack bound needs degree >= 1, got " + std::to_string(d));
    return 1 + (d - 1) * (d - 2) / 2;
}

namespace {

Integer to_integer(std::uint64_t v)
{
    Integer out;
    mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return out;
}

Integer ipow(const Integer& b, unsigned long e)
{
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
    return out;
}

} // namespace

PartitionDegree choose_partition_degree(std::uint64_t num_points, std::uint64_t num_curves, int A)
{
    if (num_points == 0 || num_curves == 0) throw InvalidInput("partition degree needs nonempty point and curve sets");
    if (A < 1) throw InvalidInput("degrees of freedom must be positive");
    const Integer P = to_integer(num_points), L = to_integer(num_curves);
    PartitionDegree out;
    if (L * L < P) {
        out.skip = true;
        out.reason = "|L| < |P|^(1/2): trivial-bound regime";
        return out;
    }
    const Integer PA = ipow(P, static_cast<unsigned long>(A));
    if (L > PA) {
        out.skip = true;
        out.reason = "|L| > |P|^A: initial-bound regime";
        return out;
    }
    // largest D with D^(2A-1) * L <= P^A, i.e. the floor of the (2A-1)-th root of floor(P^A / L)
    Integer q = PA / L, root;
    mpz_root(root.get_mpz_t(), q.get_mpz_t(), 2UL * static_cast<unsigned long>(A) - 1UL);
    Integer D = std::min(root, Integer(L / 2));
    if (D < 1) D = 1;
    out.D = D.get_si();
    while (out.levels < max_partition_levels && max_partition_degree(out.levels + 1) <= out.D) ++out.levels;
    return out;
}

QPoly PartitionResult::Q() const
{
    QPoly out = QPoly::constant(Rational(1));
    for (const auto& f : factors) out = out * f;
    return out;
}

int PartitionResult::degree() const
{
    int sum = 0;
    for (const auto& f : factors) sum += f.total_degree();
    return sum;
}

std::size_t PartitionResult::max_occupancy() const
{
    std::size_t best = 0;
    for (const auto& [s, c] : cells) best = std::max(best, c.points.size());
    return best;
}

std::vector<std::optional<SignVector>> PartitionResult::point_cells() const
{
    std::vector<std::optional<SignVector>> out(points.size());
    for (const auto& [s, c] : cells)
        for (auto k : c.points) out[k] = s;
    return out;
}

std::optional<SignVector> locate(const QPoint& p, const std::vector<QPoly>& factors)
{
    SignVector s;
    s.reserve(factors.size());
    for (const auto& f : factors) {
        const int v = sgn(f(p.x, p.y));
        if (v == 0) return std::nullopt;
        s.push_back(v);
    }
    return s;
}

std::string sign_string(const SignVector& s)
{
    std::string out = "(";
    for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::string(s[k] > 0 ? "+" : "-");
    return out + ")";
}

PartitionResult partition_from_factors(const std::vector<QPoint>& points, std::vector<QPoly> factors, int levels)
{
    for (const auto& f : factors)
        if (f.is_constant()) throw InvalidInput("partition factors must be nonconstant");
    PartitionResult out;
    out.points = points;
    out.factors = std::move(factors);
    out.levels = levels < 0 ? static_cast<int>(out.factors.size()) : levels;
    for (std::size_t k = 0; k < points.size(); ++k) {
        auto s = locate(points[k], out.factors);
        if (!s) {
            out.boundary_points.push_back(k);
            continue;
        }
        auto& cell = out.cells[*s];
        cell.signs = *s;
        cell.points.push_back(k);
    }
    return out;
}

namespace {

// ---------------------------------------------------------------------------------------
// Bisector search. Points are moved into [-1, 1]^2 by an exact translation and power-of-two
// scaling; a level-r bisector is a coefficient vector over the monomials x^i y^j, i+j <= r.

struct Normalization {
    Rational cx, cy, scale;

    QPoint apply(const QPoint& p) const { return {Rational((p.x - cx) / scale), Rational((p.y - cy) / scale)}; }
    // G(x', y') -> G((x - cx)/s, (y - cy)/s)
    QPoly pull_back(const QPoly& g) const
    {
        const Rational inv = 1 / scale;
        return g.substitute_affine(inv, Rational(0), Rational(-cx * inv), Rational(0), inv, Rational(-cy * inv));
    }
};

Normalization normalization_of(const std::vector<QPoint>& pts)
{
    Normalization n{Rational(0), Rational(0), Rational(1)};
    if (pts.empty()) return n;
    Rational lox = pts[0].x, hix = pts[0].x, loy = pts[0].y, hiy = pts[0].y;
    for (const auto& p : pts) {
        lox = std::min(lox, p.x);
        hix = std::max(hix, p.x);
        loy = std::min(loy, p.y);
        hiy = std::max(hiy, p.y);
    }
    n.cx = (lox + hix) / 2;
    n.cy = (loy + hiy) / 2;
    const Rational half = std::max(Rational(hix - lox), Rational(hiy - loy)) / 2;
    while (n.scale < half) n.scale *= 2;
    while (sgn(half) > 0 && n.scale / 2 >= half) n.scale /= 2;
    return n;
}

using Lift = std::vector<Rational>;

Lift exact_lift(const QPoint& p, const std::vector<Monomial>& mons, int r)
{
    std::vector<Rational> xs{Rational(1)}, ys{Rational(1)};
    for (int k = 1; k <= r; ++k) {
        xs.push_back(xs.back() * p.x);
        ys.push_back(ys.back() * p.y);
    }
    Lift out;
    out.reserve(mons.size());
    for (const auto& m : mons) out.push_back(xs[static_cast<std::size_t>(m.x)] * ys[static_cast<std::size_t>(m.y)]);
    return out;
}

int exact_sign(const Lift& row, const Vector<Rational>& c)
{
    Rational acc(0);
    for (std::size_t k = 0; k < row.size(); ++k)
        if (sgn(c(static_cast<Eigen::Index>(k))) != 0) acc += row[k] * c(static_cast<Eigen::Index>(k));
    return sgn(acc);
}

class LevelSearch {
public:
    LevelSearch(const std::vector<QPoint>& pts, const std::vector<std::vector<std::size_t>>& parts, int r,
                const PartitionOptions& opts, Rng rng)
        : pts_(pts), r_(r), opts_(opts), rng_(rng), mons_(veronese_exponents(r))
    {
        n_ = static_cast<Eigen::Index>(mons_.size());
        for (const auto& part : parts)
            if (part.size() >= 2) active_.push_back(part);
        for (const auto& part : active_)
            for (auto k : part) {
                if (lift_.count(k)) continue;
                lift_[k] = exact_lift(pts[k], mons_, r);
                Eigen::VectorXd v(n_);
                for (Eigen::Index i = 0; i < n_; ++i) v(i) = lift_[k][static_cast<std::size_t>(i)].get_d();
                flift_[k] = v;
            }
    }

    // Coefficient vector of a verified bisector.
    Vector<Rational> run()
    {
        Eigen::VectorXd last;
        for (int attempt = 0; attempt < opts_.restarts; ++attempt) {
            Eigen::VectorXd c = random_direction();
            auto med = solve(c, 200);
            last = c;
            if (auto exact = snap(c, med.idx)) return *exact;
        }
        if (auto exact = exhaustive()) return *exact;
        for (int k = 0; k < opts_.random_candidates; ++k) {
            const double sigma = std::pow(10.0, -1.0 - 5.0 * k / std::max(opts_.random_candidates, 1));
            Eigen::VectorXd c = last;
            for (Eigen::Index i = 0; i < n_; ++i) c(i) += sigma * rng_.normal();
            c.normalize();
            auto med = solve(c, 20);
            if (auto exact = snap(c, med.idx)) return *exact;
        }
        throw ConstructionFailure("no degree-" + std::to_string(r_) + " bisector found for " +
                                  std::to_string(active_.size()) + " parts after the full search ladder");
    }

    const std::vector<Monomial>& monomials() const { return mons_; }

private:
    // One linear condition per part: the middle value (odd size) or the mean of the two middle
    // values (even size) should vanish. Both middle points then sit on opposite sides or on the
    // curve, and each open side holds at most ceil(S/2) points.
    struct Medians {
        std::vector<std::pair<std::size_t, std::size_t>> idx;
        Eigen::VectorXd val;
        double residual = 0;
    };

    Eigen::VectorXd row(const std::pair<std::size_t, std::size_t>& m) const
    {
        return 0.5 * (flift_.at(m.first) + flift_.at(m.second));
    }

    Eigen::VectorXd random_direction()
    {
        Eigen::VectorXd c(n_);
        for (Eigen::Index i = 0; i < n_; ++i) c(i) = rng_.normal();
        return c.normalized();
    }

    Medians medians(const Eigen::VectorXd& c) const
    {
        Medians m;
        m.val.resize(static_cast<Eigen::Index>(active_.size()));
        std::vector<std::pair<double, std::size_t>> vals;
        for (std::size_t a = 0; a < active_.size(); ++a) {
            vals.clear();
            for (auto k : active_[a]) vals.emplace_back(flift_.at(k).dot(c), k);
            const std::size_t S = vals.size();
            const auto lo = vals.begin() + static_cast<std::ptrdiff_t>((S - 1) / 2);
            std::nth_element(vals.begin(), lo, vals.end());
            auto pick = std::make_pair(lo->second, lo->second);
            double v = lo->first;
            if (S % 2 == 0) {
                const auto hi = std::min_element(lo + 1, vals.end());
                pick.second = hi->second;
                v = 0.5 * (v + hi->first);
            }
            m.idx.push_back(pick);
            m.val(static_cast<Eigen::Index>(a)) = v;
            m.residual = std::max(m.residual, std::abs(v));
        }
        return m;
    }

    // Piecewise-linear Newton on "median value of every part = 0" over the unit sphere.
    Medians solve(Eigen::VectorXd& c, int iterations)
    {
        Medians m = medians(c);
        if (active_.empty()) return m;
        for (int it = 0; it < iterations && m.residual > 1e-14; ++it) {
            Eigen::MatrixXd B(static_cast<Eigen::Index>(active_.size()), n_);
            for (std::size_t a = 0; a < active_.size(); ++a) B.row(static_cast<Eigen::Index>(a)) = row(m.idx[a]);
            const Eigen::VectorXd delta = B.completeOrthogonalDecomposition().solve(Eigen::VectorXd(-m.val));
            bool improved = false;
            for (double lam = 1.0; lam > 1e-3; lam /= 2) {
                Eigen::VectorXd c2 = (c + lam * delta).normalized();
                Medians m2 = medians(c2);
                if (m2.residual < m.residual) {
                    c = c2;
                    m = std::move(m2);
                    improved = true;
                    break;
                }
            }
            if (!improved) {
                for (Eigen::Index i = 0; i < n_; ++i) c(i) += 1e-3 * rng_.normal();
                c.normalize();
                m = medians(c);
            }
        }
        return m;
    }

    bool nonconstant(const Vector<Rational>& c) const
    {
        for (Eigen::Index i = 0; i < n_; ++i)
            if (mons_[static_cast<std::size_t>(i)].degree() > 0 && sgn(c(i)) != 0) return true;
        return false;
    }

    bool verify(const Vector<Rational>& c) const
    {
        if (!nonconstant(c)) return false;
        for (const auto& part : active_) {
            const std::size_t cap = (part.size() + 1) / 2;
            std::size_t pos = 0, neg = 0;
            for (auto k : part) {
                const int s = exact_sign(lift_.at(k), c);
                pos += s > 0;
                neg += s < 0;
            }
            if (pos > cap || neg > cap) return false;
        }
        return true;
    }

    // Floating-point screen with a margin; only candidates that may pass are checked exactly.
    bool plausible(const Eigen::VectorXd& c) const
    {
        const double eps = 1e-9 * c.norm();
        for (const auto& part : active_) {
            const std::size_t cap = (part.size() + 1) / 2;
            std::size_t pos = 0, neg = 0;
            for (auto k : part) {
                const double v = flift_.at(k).dot(c);
                pos += v > eps;
                neg += v < -eps;
            }
            if (pos > cap || neg > cap) return false;
        }
        return true;
    }

    // Exact candidates near the float direction c: short dyadic roundings first, then exact
    // vectors satisfying the median conditions.
    std::optional<Vector<Rational>> snap(const Eigen::VectorXd& c,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& idx) const
    {
        const double cmax = c.cwiseAbs().maxCoeff();
        if (!(cmax > 0) || !std::isfinite(cmax)) return std::nullopt;
        for (int bits : {6, 10, 14, 20}) {
            Vector<Rational> out(n_);
            for (Eigen::Index i = 0; i < n_; ++i) out(i) = Rational(std::nearbyint(std::ldexp(c(i) / cmax, bits)));
            if (verify(out)) return out;
        }
        std::vector<Vector<Rational>> basis;
        if (idx.empty()) {
            for (Eigen::Index i = 0; i < n_; ++i) {
                Vector<Rational> e = Vector<Rational>::Constant(n_, Rational(0));
                e(i) = 1;
                basis.push_back(e);
            }
        } else {
            Matrix<Rational> E(static_cast<Eigen::Index>(idx.size()), n_);
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (Eigen::Index i = 0; i < n_; ++i)
                    E(static_cast<Eigen::Index>(a), i) =
                        lift_.at(idx[a].first)[static_cast<std::size_t>(i)] + lift_.at(idx[a].second)[static_cast<std::size_t>(i)];
            basis = kernel(E);
        }
        if (basis.empty()) return std::nullopt;
        Eigen::MatrixXd K(n_, static_cast<Eigen::Index>(basis.size()));
        for (std::size_t b = 0; b < basis.size(); ++b)
            for (Eigen::Index i = 0; i < n_; ++i) K(i, static_cast<Eigen::Index>(b)) = basis[b](i).get_d();
        const Eigen::VectorXd alpha = K.colPivHouseholderQr().solve(c);
        const double amax = alpha.cwiseAbs().maxCoeff();
        if (!(amax > 0) || !std::isfinite(amax)) return std::nullopt;
        for (int bits : {10, 20, 30}) {
            Vector<Rational> out = Vector<Rational>::Constant(n_, Rational(0));
            for (std::size_t b = 0; b < basis.size(); ++b) {
                const double a = std::nearbyint(std::ldexp(alpha(static_cast<Eigen::Index>(b)) / amax, bits));
                if (a == 0.0) continue;
                const Rational q(a);
                for (Eigen::Index i = 0; i < n_; ++i) out(i) += q * basis[b](i);
            }
            if (verify(out)) return out;
        }
        return std::nullopt;
    }

    // Hyperplanes through n-1 lifted points, when there are few enough subsets.
    std::optional<Vector<Rational>> exhaustive() const
    {
        std::vector<std::size_t> pool;
        for (const auto& part : active_) pool.insert(pool.end(), part.begin(), part.end());
        const std::size_t k = static_cast<std::size_t>(n_) - 1;
        if (pool.size() < k) return std::nullopt;
        // binomial(pool, k) capped at the limit
        double count = 1;
        for (std::size_t i = 0; i < k; ++i) count = count * static_cast<double>(pool.size() - i) / static_cast<double>(i + 1);
        if (count > static_cast<double>(opts_.exhaustive_limit)) return std::nullopt;
        std::vector<std::size_t> pick(k);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            Matrix<Rational> E(static_cast<Eigen::Index>(k), n_);
            for (std::size_t a = 0; a < k; ++a)
                for (Eigen::Index i = 0; i < n_; ++i)
                    E(static_cast<Eigen::Index>(a), i) = lift_.at(pool[pick[a]])[static_cast<std::size_t>(i)];
            const auto basis = kernel(E);
            if (basis.size() == 1) {
                Eigen::VectorXd f(n_);
                for (Eigen::Index i = 0; i < n_; ++i) f(i) = basis[0](i).get_d();
                if (plausible(f) && verify(basis[0])) return basis[0];
            }
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == pool.size() - k + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
        return std::nullopt;
    }

    const std::vector<QPoint>& pts_;
    int r_;
    const PartitionOptions& opts_;
    Rng rng_;
    std::vector<Monomial> mons_;
    Eigen::Index n_ = 0;
    std::vector<std::vector<std::size_t>> active_;
    std::map<std::size_t, Lift> lift_;
    std::map<std::size_t, Eigen::VectorXd> flift_;
};

void check_distinct_points(const std::vector<QPoint>& pts)
{
    auto sorted = pts;
    std::sort(sorted.begin(), sorted.end(), point_less<Rational>);
    for (std::size_t k = 1; k < sorted.size(); ++k)
        if (sorted[k] == sorted[k - 1]) throw InvalidInput("duplicate point " + to_string(sorted[k]));
}

} // namespace

PartitionResult build_partition(const std::vector<QPoint>& points, int t, const PartitionOptions& opts)
{
    if (t < 0 || t > max_partition_levels)
        throw InvalidInput("level count must be in [0, " + std::to_string(max_partition_levels) + "], got " +
                           std::to_string(t));
    check_distinct_points(points);
    const auto norm = normalization_of(points);
    std::vector<QPoint> local;
    local.reserve(points.size());
    for (const auto& p : points) local.push_back(norm.apply(p));

    std::vector<std::vector<std::size_t>> parts;
    if (!points.empty()) {
        parts.emplace_back(points.size());
        std::iota(parts.back().begin(), parts.back().end(), std::size_t{0});
    }
    std::vector<QPoly> factors;
    for (int j = 1; j <= t; ++j) {
        const int r = level_degree(j);
        LevelSearch search(local, parts, r, opts, Rng::derive(opts.seed, static_cast<std::uint64_t>(j)));
        const auto c = search.run();
        QPoly g(r);
        const auto& mons = search.monomials();
        for (std::size_t i = 0; i < mons.size(); ++i) g.add_term(mons[i].x, mons[i].y, c(static_cast<Eigen::Index>(i)));
        std::vector<std::vector<std::size_t>> next;
        for (const auto& part : parts) {
            std::vector<std::size_t> pos, neg;
            for (auto k : part) {
                const int s = sgn(g(local[k].x, local[k].y));
                if (s > 0) pos.push_back(k);
                if (s < 0) neg.push_back(k);
            }
            if (!pos.empty()) next.push_back(std::move(pos));
            if (!neg.empty()) next.push_back(std::move(neg));
        }
        parts = std::move(next);
        factors.push_back(norm.pull_back(g).canonical());
    }

    auto out = partition_from_factors(points, std::move(factors), t);
    // post-hoc audit in the input coordinates
    const std::size_t cap = t == 0 ? points.size() : (points.size() + (std::size_t{1} << t) - 1) >> t;
    if (out.max_occupancy() > cap)
        throw ConstructionFailure("partition audit: a cell holds " + std::to_string(out.max_occupancy()) +
                                  " points, above " + std::to_string(cap));
    for (std::size_t j = 0; j < out.factors.size(); ++j)
        if (out.factors[j].total_degree() > level_degree(static_cast<int>(j) + 1))
            throw ConstructionFailure("partition audit: factor " + std::to_string(j + 1) + " has degree " +
                                      std::to_string(out.factors[j].total_degree()));
    if (out.degree() > max_partition_degree(t))
        throw ConstructionFailure("partition audit: deg Q = " + std::to_string(out.degree()) + " exceeds " +
                                  std::to_string(max_partition_degree(t)));
    return out;
}

// -----------------------------------------------------------------------------------------
// Crossing profiles

namespace {

RPoly x_part(const QPoly& f)
{
    // f has degree 0 in y here
    return f.y_coefficients().at(0);
}

RPoly critical_factor(const QPoly& g, const QPoly& f)
{
    if (f.degree_in(Variable::y) >= 1) return resultant(g, f, Variable::y);
    return x_part(f);
}

// Pairwise coprime squarefree polynomials with the same real roots as the inputs together.
std::vector<RPoly> coprime_base(std::vector<RPoly> polys)
{
    const auto clean = [](std::vector<RPoly>& v) {
        v.erase(std::remove_if(v.begin(), v.end(), [](const RPoly& p) { return p.degree() < 1; }), v.end());
    };
    for (auto& p : polys)
        if (p.degree() >= 1) p = squarefree_part(p);
    clean(polys);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < polys.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < polys.size() && !changed; ++j) {
                const RPoly g = gcd(polys[i], polys[j]);
                if (g.degree() < 1) continue;
                polys[i] = exact_div(polys[i], g);
                polys[j] = exact_div(polys[j], g);
                polys.push_back(g);
                clean(polys);
                changed = true;
            }
    }
    return polys;
}

int sign_of_factor_at(const RPoly& fiber, RootInterval& iv, const RPoly& f)
{
    if (f.is_zero()) return 0;
    if (f.degree() == 0) return sgn(f.coeff(0));
    return sign_at_root(fiber, iv, f);
}

// Sign vectors of the real points of g on the vertical line x = x0; points on Z(Q) are skipped
// when `skip_boundary`, otherwise they are an error.
void visit_fiber(const QPoly& g, const std::vector<QPoly>& fs, const Rational& x0, bool skip_boundary,
                 std::set<SignVector>& visited)
{
    const RPoly fiber_full = g.at_x(x0);
    if (fiber_full.degree() < 1) return;
    const RPoly fiber = squarefree_part(fiber_full);
    auto roots = isolate_real_roots(fiber, Rational(1));
    std::vector<RPoly> fx;
    for (const auto& f : fs) fx.push_back(f.at_x(x0));
    for (auto& iv : roots) {
        SignVector s;
        bool boundary = false;
        for (const auto& f : fx) {
            const int v = sign_of_factor_at(fiber, iv, f);
            if (v == 0) {
                boundary = true;
                break;
            }
            s.push_back(v);
        }
        if (boundary) {
            if (skip_boundary) continue;
            throw InternalConsistencyError("arc sample point at x = " + to_string(x0) + " lies on Z(Q)");
        }
        visited.insert(std::move(s));
    }
}

} // namespace

CrossingProfile curve_cells(const QPoly& c, const PartitionResult& part)
{
    if (c.is_zero()) throw InvalidInput("curve_cells needs a nonzero curve");
    CrossingProfile out;
    out.degree = std::max(c.total_degree(), 0);
    if (out.degree == 0) return out;  // a nonzero constant has no points
    out.bound = static_cast<std::size_t>(out.degree) * static_cast<std::size_t>(part.degree()) +
                static_cast<std::size_t>(harnack_bound(out.degree));
    for (std::size_t k = 0; k < part.factors.size(); ++k)
        if (!poly_gcd(c, part.factors[k]).is_constant()) {
            out.contained = true;
            out.containing_factor = k;
            return out;
        }

    // shear (x, y) -> (x + s y, y) so that the top-degree form does not vanish at (s, 1)
    const int e = out.degree;
    Rational s(0);
    for (int k = 1;; ++k) {
        Rational h(0), sp(1);
        for (int i = 0; i <= e; ++i) {
            h += c.coeff(i, e - i) * sp;
            sp *= s;
        }
        if (sgn(h) != 0) break;
        s = (k % 2) ? Rational((k + 1) / 2) : Rational(-(k / 2));
    }
    const auto shear = [&](const QPoly& f) {
        return f.substitute_affine(Rational(1), s, Rational(0), Rational(0), Rational(1), Rational(0));
    };
    const QPoly g = squarefree_part_y(shear(c));
    std::vector<QPoly> fs;
    for (const auto& f : part.factors) fs.push_back(shear(f));

    std::vector<RPoly> crossing_polys;
    for (const auto& f : fs) {
        const RPoly r = critical_factor(g, f);
        if (r.is_zero()) throw InternalConsistencyError("vanishing resultant for a transverse curve");
        if (r.degree() >= 1) crossing_polys.push_back(squarefree_part(r));
    }
    RPoly disc(1);
    if (g.degree_in(Variable::y) >= 2) {
        disc = resultant(g, g.partial(Variable::y), Variable::y);
        if (disc.is_zero()) throw InternalConsistencyError("vanishing discriminant after squarefree reduction");
        disc = disc.degree() >= 1 ? squarefree_part(disc) : RPoly(1);
    }
    auto critical = crossing_polys;
    if (disc.degree() >= 1) critical.push_back(disc);
    const auto base = coprime_base(std::move(critical));

    // all critical abscissae, ordered, with pairwise disjoint isolating intervals
    std::vector<std::pair<RootInterval, std::size_t>> roots;
    for (std::size_t b = 0; b < base.size(); ++b) {
        const bool crosses = std::any_of(crossing_polys.begin(), crossing_polys.end(),
                                         [&](const RPoly& r) { return gcd(base[b], r).degree() >= 1; });
        for (const auto& iv : isolate_real_roots(base[b], Rational(1))) {
            roots.emplace_back(iv, b);
            out.crossings += crosses;
        }
    }
    const auto by_lo = [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; };
    std::sort(roots.begin(), roots.end(), by_lo);
    for (bool overlap = true; overlap;) {
        overlap = false;
        for (std::size_t k = 0; k + 1 < roots.size(); ++k) {
            auto& a = roots[k];
            auto& b = roots[k + 1];
            if (a.first.hi < b.first.lo) continue;
            overlap = true;
            // distinct base polynomials have no common root, so refinement separates them
            if (!a.first.is_exact()) a.first = refine_root(base[a.second], a.first, a.first.width() / 2);
            if (!b.first.is_exact()) b.first = refine_root(base[b.second], b.first, b.first.width() / 2);
        }
        if (overlap) std::sort(roots.begin(), roots.end(), by_lo);
    }

    // one sample abscissa in every gap between critical abscissae
    std::vector<Rational> samples;
    if (roots.empty()) {
        samples.push_back(Rational(0));
    } else {
        samples.push_back(Rational(roots.front().first.lo - 1));
        for (std::size_t k = 0; k + 1 < roots.size(); ++k)
            samples.push_back(simplest_between(roots[k].first.hi, roots[k + 1].first.lo));
        samples.push_back(Rational(roots.back().first.hi + 1));
    }
    for (const auto& x0 : samples) visit_fiber(g, fs, x0, false, out.visited);

    // singular points at rational abscissae (isolated real points have no arcs through them)
    if (disc.degree() >= 1)
        for (const auto& iv : isolate_real_roots(disc, Rational(1)))
            if (auto alpha = rational_root_in(disc, iv)) visit_fiber(g, fs, *alpha, true, out.visited);

    out.within_bound = out.visited.size() <= out.bound;
    return out;
}

// -----------------------------------------------------------------------------------------
// Counting

PartitionedCount incidence_count_partitioned(const PointConfiguration<Rational>& cfg, const PartitionResult& part,
                                             unsigned threads)
{
    if (cfg.points != part.points) throw InvalidInput("the partition was built on a different point set");
    PartitionedCount out;
    out.profiles.resize(cfg.curves.size());
    out.per_curve.assign(cfg.curves.size(), 0);
    std::vector<bool> on_boundary(cfg.points.size(), false);
    for (auto k : part.boundary_points) on_boundary[k] = true;

    struct Split {
        std::uint64_t cell_cell = 0, alg_cell = 0, alg_alg = 0, cell_alg = 0;
    };
    std::vector<Split> split(cfg.curves.size());
    parallel_for(cfg.curves.size(), threads, [&](std::size_t k) {
        const auto& c = cfg.curves[k];
        auto profile = curve_cells(c, part);
        Split sp;
        if (profile.contained) {
            for (std::size_t p = 0; p < cfg.points.size(); ++p)
                if (on_curve(cfg.points[p], c)) (on_boundary[p] ? sp.alg_alg : sp.cell_alg) += 1;
        } else {
            for (auto p : part.boundary_points) sp.alg_cell += on_curve(cfg.points[p], c);
            for (const auto& s : profile.visited) {
                auto it = part.cells.find(s);
                if (it == part.cells.end()) continue;
                for (auto p : it->second.points) sp.cell_cell += on_curve(cfg.points[p], c);
            }
        }
        split[k] = sp;
        out.profiles[k] = std::move(profile);
    });

    const auto brute = incidence_count_bruteforce(cfg, threads);
    for (std::size_t k = 0; k < cfg.curves.size(); ++k) {
        const auto& sp = split[k];
        out.cell_cell += sp.cell_cell;
        out.alg_cell += sp.alg_cell;
        out.alg_alg += sp.alg_alg;
        out.cell_alg += sp.cell_alg;
        out.per_curve[k] = sp.cell_cell + sp.alg_cell + sp.alg_alg + sp.cell_alg;
        if (out.per_curve[k] != brute.per_curve[k])
            throw InternalConsistencyError("partitioned count for curve " + std::to_string(k) + " is " +
                                           std::to_string(out.per_curve[k]) + ", brute force gives " +
                                           std::to_string(brute.per_curve[k]));
        if (out.profiles[k].contained)
            ++out.curves_alg;
        else
            out.sum_Li += out.profiles[k].visited.size();
    }
    return out;
}

DyadicLedger dyadic_ledger(const PointConfiguration<Rational>& cfg, const LedgerOptions& opts)
{
    const int A = degrees_of_freedom(cfg.d).A;
    DyadicLedger out;
    PointConfiguration<Rational> cur = cfg;
    for (bool first = true;; first = false) {
        LedgerStep step;
        step.curves = cur.curves.size();
        step.points = cur.points.size();
        const bool given = first && !opts.first_factors.empty();
        const bool empty = cur.points.empty() || cur.curves.empty();
        const auto choice = empty ? PartitionDegree{true, "empty", 0, 0}
                                  : choose_partition_degree(cur.points.size(), cur.curves.size(), A);
        if (choice.skip && !given) {
            step.closure = true;
            step.accounted = incidence_count_bruteforce(cur, opts.threads).incidence_count;
            out.total += step.accounted;
            out.steps.push_back(step);
            break;
        }
        int t = std::min(choice.levels, opts.max_levels);
        int log2p = 0;
        while ((std::size_t{2} << log2p) <= cur.points.size()) ++log2p;
        t = std::max(1, std::min(t, log2p));
        const auto part = given ? partition_from_factors(cur.points, opts.first_factors)
                                : build_partition(cur.points, t, opts.partition);
        const auto count = incidence_count_partitioned(cur, part, opts.threads);
        step.D = choice.D;
        step.levels = given ? part.levels : t;
        step.degree = part.degree();
        step.accounted = count.cell_cell + count.alg_cell + count.cell_alg;

        PointConfiguration<Rational> next{cur.field, cur.d, {}, {}};
        for (auto k : part.boundary_points) next.points.push_back(cur.points[k]);
        for (std::size_t k = 0; k < cur.curves.size(); ++k)
            if (count.profiles[k].contained) next.curves.push_back(cur.curves[k]);
        step.curves_alg = next.curves.size();
        step.points_alg = next.points.size();
        out.total += step.accounted;
        out.steps.push_back(step);
        if (2 * next.curves.size() > cur.curves.size())
            throw InternalConsistencyError("dyadic step kept " + std::to_string(next.curves.size()) + " of " +
                                           std::to_string(cur.curves.size()) + " curves");
        if (next.curves.empty()) break;
        cur = std::move(next);
    }
    const auto brute = incidence_count_bruteforce(cfg, opts.threads).incidence_count;
    if (out.total != brute)
        throw InternalConsistencyError("dyadic ledger total " + std::to_string(out.total) + " differs from brute force " +
                                       std::to_string(brute));
    return out;
}

std::string dump_factors(const PartitionResult& part)
{
    std::string out;
    for (std::size_t k = 0; k < part.factors.size(); ++k)
        out += "F" + std::to_string(k + 1) + " = " + part.factors[k].to_string() + "\n";
    if (part.factors.empty()) out += "Q = 1\n";
    return out;
}

} // namespace incidence
