#include "wach/padic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace wach {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

}  // namespace

u64 mulmod_u64(u64 a, u64 b, u64 mod) {
    return static_cast<u64>((static_cast<u128>(a) * b) % mod);
}

u64 pow_u64(u64 b, u64 e, u64 mod) {
    u64 r = 1 % mod;
    b %= mod;
    while (e) {
        if (e & 1) r = mulmod_u64(r, b, mod);
        b = mulmod_u64(b, b, mod);
        e >>= 1;
    }
    return r;
}

int val_u64(u64 x, long p, int cap) {
    if (x == 0) return cap;
    int v = 0;
    auto up = static_cast<u64>(p);
    while (v < cap && x % up == 0) {
        x /= up;
        ++v;
    }
    return v;
}

long long vp_factorial(long long n, long p) {
    long long v = 0;
    for (long long q = p; q <= n; q *= p) {
        v += n / q;
        if (q > n / p) break;
    }
    return v;
}

int max_working_exponent(long p) {
    int w = 0;
    u64 x = 1;
    const u64 cap = (1ULL << 62);
    while (x <= cap / static_cast<u64>(p)) {
        x *= static_cast<u64>(p);
        ++w;
    }
    return w;
}

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

}  // namespace

PrecisionBudget::PrecisionBudget(long p_, int M_, int N_, int d_) : p(p_), M(M_), N(N_), d(d_) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (M < 1 || N < 1) throw std::invalid_argument("precision exponents must be >= 1");
    if (d < 1 || d > 4) throw std::invalid_argument("coefficient degree limited to d <= 4");
    W = M + 2 * denom_bound() + 10;
    int wmax = max_working_exponent(p);
    if (W > wmax) W = wmax;
    if (W < M + denom_bound() + 2)
        throw std::invalid_argument("budget too large for 64-bit residue storage");
}

u64 PrecisionBudget::pow_p(int e) const {
    if (e < 0 || e > W) throw std::invalid_argument("pow_p exponent out of range");
    u64 r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<u64>(p);
    return r;
}

const std::vector<long>& modulus_poly(long p, int d) {
    // integer lifts of Conway polynomials: x^d + t[d-1]x^{d-1} + ... + t[0]
    static const std::map<std::pair<long, int>, std::vector<long>> table = {
        {{2, 2}, {1, 1}},       {{2, 3}, {1, 1, 0}},       {{2, 4}, {1, 1, 0, 0}},
        {{3, 2}, {2, 2}},       {{3, 3}, {1, 2, 0}},       {{3, 4}, {2, 0, 0, 2}},
        {{5, 2}, {2, 4}},       {{5, 3}, {3, 3, 0}},       {{5, 4}, {2, 4, 4, 0}},
        {{7, 2}, {3, 6}},       {{7, 3}, {4, 0, 6}},       {{7, 4}, {3, 4, 5, 0}},
        {{11, 2}, {2, 7}},      {{13, 2}, {2, 12}},
    };
    auto it = table.find({p, d});
    if (it == table.end()) throw std::invalid_argument("no modulus polynomial for this (p, d)");
    return it->second;
}

void PadicScalar::reduce_() {
    for (auto& x : c_) x %= mod_;
}

PadicScalar::PadicScalar(const PrecisionBudget& bud, u64 c0)
    : p_(bud.p), W_(bud.W), d_(bud.d), mod_(bud.modulus()) {
    c_[0] = c0 % mod_;
}

PadicScalar PadicScalar::zero(const PrecisionBudget& bud) { return PadicScalar(bud, 0); }
PadicScalar PadicScalar::one(const PrecisionBudget& bud) { return PadicScalar(bud, 1); }

PadicScalar PadicScalar::from_int(const PrecisionBudget& bud, long long v) {
    PadicScalar r(bud, 0);
    if (v >= 0) {
        r.c_[0] = static_cast<u64>(v) % r.mod_;
    } else {
        u64 m = static_cast<u64>(-(v + 1)) % r.mod_;
        r.c_[0] = (r.mod_ - 1 - m) % r.mod_;
    }
    return r;
}

PadicScalar PadicScalar::from_coords(const PrecisionBudget& bud, const std::vector<u64>& coords) {
    if (coords.size() > static_cast<size_t>(bud.d))
        throw std::invalid_argument("too many coordinates for budget degree");
    PadicScalar r(bud, 0);
    for (size_t i = 0; i < coords.size(); ++i) r.c_[i] = coords[i] % r.mod_;
    return r;
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
    PadicScalar r = *this;
    for (int i = 0; i < d_; ++i) r.c_[static_cast<size_t>(i)] = (c_[static_cast<size_t>(i)] + o.c_[static_cast<size_t>(i)]) % mod_;
    return r;
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const {
    PadicScalar r = *this;
    for (int i = 0; i < d_; ++i) {
        u64 a = c_[static_cast<size_t>(i)], b = o.c_[static_cast<size_t>(i)];
        r.c_[static_cast<size_t>(i)] = (a + mod_ - b) % mod_;
    }
    return r;
}

PadicScalar PadicScalar::operator-() const {
    PadicScalar r = *this;
    for (int i = 0; i < d_; ++i) r.c_[static_cast<size_t>(i)] = (mod_ - c_[static_cast<size_t>(i)]) % mod_;
    return r;
}

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
    PadicScalar r = *this;
    if (d_ == 1) {
        r.c_[0] = mulmod_u64(c_[0], o.c_[0], mod_);
        return r;
    }
    // schoolbook product, then reduce by the modulus polynomial
    std::array<u64, 8> prod{};
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) {
            u128 t = static_cast<u128>(c_[static_cast<size_t>(i)]) * o.c_[static_cast<size_t>(j)] + prod[static_cast<size_t>(i + j)];
            prod[static_cast<size_t>(i + j)] = static_cast<u64>(t % mod_);
        }
    const auto& mp = modulus_poly(p_, d_);
    for (int k = 2 * d_ - 2; k >= d_; --k) {
        u64 top = prod[static_cast<size_t>(k)];
        if (top == 0) continue;
        prod[static_cast<size_t>(k)] = 0;
        for (int i = 0; i < d_; ++i) {
            // x^d = -sum mp[i] x^i
            u64 sub = mulmod_u64(top, static_cast<u64>(mp[static_cast<size_t>(i)]) % mod_, mod_);
            size_t idx = static_cast<size_t>(k - d_ + i);
            prod[idx] = (prod[idx] + mod_ - sub) % mod_;
        }
    }
    for (int i = 0; i < d_; ++i) r.c_[static_cast<size_t>(i)] = prod[static_cast<size_t>(i)];
    return r;
}

bool PadicScalar::operator==(const PadicScalar& o) const {
    if (p_ != o.p_ || d_ != o.d_ || W_ != o.W_) return false;
    for (int i = 0; i < d_; ++i)
        if (c_[static_cast<size_t>(i)] != o.c_[static_cast<size_t>(i)]) return false;
    return true;
}

PadicScalar PadicScalar::mul_int(long long v) const {
    PadicScalar r = *this;
    u64 m;
    if (v >= 0)
        m = static_cast<u64>(v) % mod_;
    else
        m = (mod_ - 1 - static_cast<u64>(-(v + 1)) % mod_) % mod_;
    for (int i = 0; i < d_; ++i) r.c_[static_cast<size_t>(i)] = mulmod_u64(c_[static_cast<size_t>(i)], m, mod_);
    return r;
}

PadicScalar PadicScalar::pow_u(unsigned long long e) const {
    PadicScalar r = *this;
    for (int i = 0; i < d_; ++i) r.c_[static_cast<size_t>(i)] = 0;
    r.c_[0] = 1 % mod_;
    PadicScalar b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool PadicScalar::is_zero() const {
    for (int i = 0; i < d_; ++i)
        if (c_[static_cast<size_t>(i)] != 0) return false;
    return true;
}

bool PadicScalar::is_zero_mod(int m) const {
    if (m >= W_) return is_zero();
    u64 pm = 1;
    for (int i = 0; i < m; ++i) pm *= static_cast<u64>(p_);
    for (int i = 0; i < d_; ++i)
        if (c_[static_cast<size_t>(i)] % pm != 0) return false;
    return true;
}

int PadicScalar::val_raw() const {
    int v = W_;
    for (int i = 0; i < d_; ++i) v = std::min(v, val_u64(c_[static_cast<size_t>(i)], p_, W_));
    return v;
}

PadicScalar PadicScalar::shift_p(int t) const {
    PadicScalar r = *this;
    if (t >= 0) {
        u64 pt = 1;
        for (int i = 0; i < t && i <= W_; ++i) pt = pt * static_cast<u64>(p_) % mod_;
        for (int i = 0; i < d_; ++i) r.c_[static_cast<size_t>(i)] = mulmod_u64(c_[static_cast<size_t>(i)], pt, mod_);
        return r;
    }
    int s = -t;
    if (s > W_) throw PrecisionLossError("shift_p: dividing past storage precision");
    u64 ps = 1;
    for (int i = 0; i < s; ++i) ps *= static_cast<u64>(p_);
    for (int i = 0; i < d_; ++i) {
        if (c_[static_cast<size_t>(i)] % ps != 0)
            throw PrecisionLossError("shift_p: coordinate not divisible by p^" + std::to_string(s));
        r.c_[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)] / ps;
    }
    return r;
}

PadicScalar PadicScalar::unit_inverse() const {
    if (val_raw() != 0) throw NotAUnitError("unit_inverse: valuation is positive");
    PrecisionBudget bud;
    bud.p = p_;
    bud.W = W_;
    bud.d = d_;
    // inverse mod p by Fermat in the residue field, then Newton lifting
    PadicScalar y = zero(bud);
    {
        // reduce to coordinates mod p and exponentiate by p^d - 2
        PadicScalar a0 = *this;
        u64 up = static_cast<u64>(p_);
        for (int i = 0; i < d_; ++i) a0.c_[static_cast<size_t>(i)] %= up;
        u64 e = 1;
        for (int i = 0; i < d_; ++i) e *= up;
        PadicScalar t = a0.pow_u(e - 2);
        y = t;
        for (int i = 0; i < d_; ++i) y.c_[static_cast<size_t>(i)] %= up;
    }
    PadicScalar two = from_int(bud, 2);
    int got = 1;
    while (got < W_) {
        y = y * (two - *this * y);
        got *= 2;
    }
    return y;
}

std::string PadicScalar::to_text(int m) const {
    u64 pm = 1;
    for (int i = 0; i < std::min(m, W_); ++i) pm *= static_cast<u64>(p_);
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < d_; ++i) {
        u64 v = c_[static_cast<size_t>(i)] % pm;
        if (v == 0 && !(i == 0 && is_zero_mod(m))) continue;
        if (!first) os << " + ";
        os << v;
        if (i == 1) os << "*w";
        if (i > 1) os << "*w^" << i;
        first = false;
    }
    if (first) os << 0;
    os << " (mod " << p_ << "^" << m << ")";
    return os.str();
}

Valuation val(const PadicScalar& x, int M) {
    if (x.is_zero_mod(M)) return Valuation::at_least(M);
    return Valuation::exact(x.val_raw());
}

BinomResult binom(const PadicScalar& a, long n, int cert) {
    if (a.degree() != 1) throw std::invalid_argument("binom: argument must have degree 1");
    if (n < 0) throw std::invalid_argument("binom: n must be >= 0");
    PrecisionBudget bud;
    bud.p = a.p();
    bud.W = a.working();
    bud.d = 1;
    if (n == 0) return {PadicScalar::one(bud), cert};
    long long v = vp_factorial(n, a.p());
    if (cert - v <= 0) throw PrecisionLossError("binom: dividing by n! exhausts the certified precision");
    u64 mod = bud.modulus();
    u64 num = 1;
    for (long i = 0; i < n; ++i) {
        u64 ai = (a.coord(0) + mod - static_cast<u64>(i) % mod) % mod;
        num = mulmod_u64(num, ai, mod);
    }
    // n! = p^v * u with u a unit
    u64 ufac = 1;
    for (long i = 2; i <= n; ++i) {
        long long t = i;
        while (t % a.p() == 0) t /= a.p();
        ufac = mulmod_u64(ufac, static_cast<u64>(t) % mod, mod);
    }
    PadicScalar numerator(bud, num);
    numerator = numerator.shift_p(static_cast<int>(-v));  // throws if not divisible
    PadicScalar uinv = PadicScalar(bud, ufac).unit_inverse();
    return {numerator * uinv, static_cast<int>(cert - v)};
}

PadicScalar binom_int(const PrecisionBudget& bud, long long a, long n) {
    if (n < 0) throw std::invalid_argument("binom_int: n must be >= 0");
    bool negate = false;
    if (a < 0) {
        // C(a, n) = (-1)^n C(n - a - 1, n)
        a = n - a - 1;
        negate = (n % 2) != 0;
    }
    if (a < n) return PadicScalar::zero(bud);
    if (a <= 80) {
        u128 c = 1;
        for (long i = 1; i <= n; ++i) {
            c = c * static_cast<u128>(a - i + 1);
            c /= static_cast<u128>(i);  // exact at each step
        }
        u64 r = static_cast<u64>(c % bud.modulus());
        PadicScalar out(bud, r);
        return negate ? -out : out;
    }
    // large a: residue path with headroom for the division by n!
    long long v = vp_factorial(n, bud.p);
    if (bud.W + v > max_working_exponent(bud.p))
        throw PrecisionLossError("binom_int: argument too large for exact reduction");
    PrecisionBudget wide = bud;
    wide.W = bud.W + static_cast<int>(v);
    BinomResult br = binom(PadicScalar::from_int(wide, a), n, wide.W);
    PadicScalar out(bud, 0);
    u64 mod = bud.modulus();
    PadicScalar narrowed = PadicScalar(bud, br.value.coord(0) % mod);
    return negate ? -narrowed : narrowed;
}

PadicScalar parse_scalar(const PrecisionBudget& bud, const std::string& text) {
    // accepts "c0 + c1*w + c2*w^2 (mod p^m)"; the (mod ...) suffix is optional
    std::string body = text;
    auto mpos = body.find("(mod");
    if (mpos != std::string::npos) body = body.substr(0, mpos);
    std::vector<u64> coords(static_cast<size_t>(bud.d), 0);
    std::istringstream is(body);
    std::string term;
    std::string plus;
    while (is >> term) {
        if (term == "+") continue;
        u64 coef = 0;
        int power = 0;
        auto star = term.find('*');
        if (star == std::string::npos) {
            coef = std::stoull(term);
            power = 0;
        } else {
            coef = std::stoull(term.substr(0, star));
            std::string wpart = term.substr(star + 1);
            if (wpart == "w")
                power = 1;
            else if (wpart.rfind("w^", 0) == 0)
                power = std::stoi(wpart.substr(2));
            else
                throw std::invalid_argument("parse_scalar: bad term " + term);
        }
        if (power >= bud.d) throw std::invalid_argument("parse_scalar: power exceeds degree");
        coords[static_cast<size_t>(power)] = coef;
    }
    return PadicScalar::from_coords(bud, coords);
}

}  // namespace wach
