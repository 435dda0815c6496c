#include "incidence/real_roots.hpp"

#include <algorithm>

#include "incidence/errors.hpp"

namespace incidence {

namespace {

Integer floor_of(const Rational& q)
{
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

// Integer coefficients, ascending; signs are evaluated without rational arithmetic.
using IntPoly = std::vector<Integer>;

IntPoly integer_form(const RPoly& p)
{
    const RPoly q = primitive_integer(p);
    IntPoly out;
    for (const auto& c : q.coefficients()) out.push_back(c.get_num());
    return out;
}

// sign of sum a_k (n/d)^k = sign of sum a_k n^k d^(deg-k), d > 0
int sign_int(const IntPoly& a, const Rational& x)
{
    if (a.empty()) return 0;
    const Integer& n = x.get_num();
    const Integer& d = x.get_den();
    Integer acc = a.back(), dp = 1;
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        dp *= d;
        acc *= n;
        acc += a[k] * dp;
    }
    return sgn(acc);
}

struct Evaluator {
    explicit Evaluator(const RPoly& p) : a(integer_form(p)) {}
    int sign(const Rational& x) const { return sign_int(a, x); }
    bool root(const Rational& x) const { return sign(x) == 0; }
    IntPoly a;
};

// Bisects an interval whose endpoints are non-roots of different sign.
RootInterval bisect_once(const Evaluator& f, RootInterval iv)
{
    Rational mid = (iv.lo + iv.hi) / 2;
    const int sm = f.sign(mid);
    if (sm == 0) return {mid, mid};
    if (sm == f.sign(iv.lo))
        iv.lo = mid;
    else
        iv.hi = mid;
    return iv;
}

// Moves a root lo endpoint inward while keeping exactly one root of f in (lo, hi].
RootInterval clear_lower_endpoint(const SturmSequence& s, RootInterval iv)
{
    const Evaluator f(s.squarefree());
    while (f.root(iv.lo)) {
        Rational mid = (iv.lo + iv.hi) / 2;
        if (s.count(iv.lo, mid) == 1) {
            if (f.root(mid)) return {mid, mid};
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
    return iv;
}

} // namespace

RPoly primitive_integer(const RPoly& p)
{
    if (p.is_zero()) return p;
    Integer lcm = 1, g = 0;
    for (const auto& c : p.coefficients()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Rational> out;
    for (const auto& c : p.coefficients()) {
        Rational v(c * lcm);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
        out.push_back(v);
    }
    for (auto& c : out) c /= g;
    return RPoly(std::move(out));
}

int sign_at(const RPoly& p, const Rational& x) { return sign_int(integer_form(p), x); }

SturmSequence::SturmSequence(const RPoly& p)
{
    if (p.is_zero()) throw InvalidInput("Sturm sequence of the zero polynomial");
    chain_.push_back(primitive_integer(squarefree_part(p)));
    if (chain_.front().degree() >= 1) {
        chain_.push_back(primitive_integer(chain_.front().derivative()));
        while (true) {
            RPoly r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
            if (r.is_zero()) break;
            chain_.push_back(primitive_integer(-r));
        }
    }
    for (const auto& q : chain_) {
        std::vector<Integer> a;
        for (const auto& c : q.coefficients()) a.push_back(c.get_num());
        ints_.push_back(std::move(a));
    }
}

int SturmSequence::variations(const Rational& x) const
{
    int out = 0, last = 0;
    for (const auto& q : ints_) {
        const int s = sign_int(q, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++out;
        last = s;
    }
    return out;
}

Rational root_bound(const RPoly& p)
{
    // every root satisfies |z| <= 2 max_k |a_(n-k) / a_n|^(1/k); each term is rounded up to a
    // power of two through bit lengths
    if (p.degree() < 1) return Rational(1);
    const auto a = integer_form(p);
    const long n = static_cast<long>(a.size()) - 1;
    const long lead_bits = static_cast<long>(mpz_sizeinbase(a.back().get_mpz_t(), 2));
    long e = 0;
    for (long k = 1; k <= n; ++k) {
        const Integer& c = a[static_cast<std::size_t>(n - k)];
        if (sgn(c) == 0) continue;
        // |c / lead| < 2^(bits(c) - bits(lead) + 1)
        const long q = static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 2)) - lead_bits + 1;
        e = std::max(e, q <= 0 ? 0 : (q + k - 1) / k);
    }
    Rational b = 1;
    mpz_mul_2exp(b.get_num_mpz_t(), b.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e + 2));
    return b;
}

std::vector<RootInterval> isolate_real_roots(const RPoly& u, const Rational& width)
{
    if (u.is_zero()) throw InvalidInput("root isolation of the zero polynomial");
    if (sgn(width) <= 0) throw InvalidInput("isolation width must be positive");
    const SturmSequence s(u);
    std::vector<RootInterval> out;
    if (s.squarefree().degree() < 1) return out;
    const Evaluator f(s.squarefree());
    const Rational b = root_bound(s.squarefree());
    // work list of half-open intervals (lo, hi] with their root counts
    std::vector<std::pair<RootInterval, int>> todo{{{Rational(-b), b}, s.count(-b, b)}};
    while (!todo.empty()) {
        auto [iv, n] = todo.back();
        todo.pop_back();
        if (n == 0) continue;
        if (n == 1) {
            if (f.root(iv.hi)) {
                out.push_back({iv.hi, iv.hi});
                continue;
            }
            iv = clear_lower_endpoint(s, iv);
            while (!iv.is_exact() && iv.width() > width) iv = bisect_once(f, iv);
            out.push_back(iv);
            continue;
        }
        Rational mid = (iv.lo + iv.hi) / 2;
        const int left = s.count(iv.lo, mid);
        todo.push_back({{iv.lo, mid}, left});
        todo.push_back({{mid, iv.hi}, n - left});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

RootInterval refine_root(const RPoly& f, RootInterval iv, const Rational& width)
{
    const Evaluator e(f);
    while (!iv.is_exact() && iv.width() > width) iv = bisect_once(e, iv);
    return iv;
}

int sign_at_root(const RPoly& f, RootInterval& iv, const RPoly& g)
{
    if (g.is_zero()) return 0;
    if (iv.is_exact()) return sign_at(g, iv.lo);
    if (g.degree() < 1) return sgn(g.leading());
    const RPoly h = gcd(f, g);
    if (h.degree() >= 1 && sign_at(h, iv.lo) != sign_at(h, iv.hi)) return 0;
    const SturmSequence sg(g);
    const Evaluator fe(f), ge(g);
    while (true) {
        if (!ge.root(iv.lo) && !ge.root(iv.hi) && sg.count(iv.lo, iv.hi) == 0) return ge.sign(iv.lo);
        iv = bisect_once(fe, iv);
        if (iv.is_exact()) return ge.sign(iv.lo);
    }
}

std::optional<Rational> rational_root_in(const RPoly& f, RootInterval iv)
{
    if (iv.is_exact()) return iv.lo;
    const Evaluator fe(f);
    const Rational lead = abs(Rational(fe.a.back()));
    const Rational limit = 1 / (lead * lead);
    while (!iv.is_exact() && iv.width() >= limit) iv = bisect_once(fe, iv);
    if (iv.is_exact()) return iv.lo;
    Rational s = simplest_between(iv.lo, iv.hi);
    if (fe.root(s)) return s;
    return std::nullopt;
}

Rational simplest_between(const Rational& a, const Rational& b)
{
    if (!(a < b)) throw InvalidInput("simplest_between needs a < b");
    if (sgn(a) < 0 && sgn(b) > 0) return Rational(0);
    if (sgn(b) <= 0) return Rational(-simplest_between(Rational(-b), Rational(-a)));
    const Integer n = floor_of(a);
    if (Rational(n + 1) < b) return Rational(n + 1);
    // a and b lie in [n, n + 1]; recurse on reciprocals of the fractional parts
    const Rational fa(a - n), fb(b - n);
    if (sgn(fa) == 0) {
        const Integer k = floor_of(Rational(1 / fb)) + 1;
        return Rational(Rational(n) + Rational(1, 1) / Rational(k));
    }
    return Rational(Rational(n) + 1 / simplest_between(Rational(1 / fb), Rational(1 / fa)));
}

} // namespace incidence
