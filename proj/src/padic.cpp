#include "dynamo/padic.hpp"

#include <algorithm>
#include <sstream>

namespace dynamo {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod_u64(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

// ---- dense univariate arithmetic over F_p, used by the irreducibility test

using FpPoly = std::vector<u64>;  // coefficients, constant term first

void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod, u64 p) {
    if (a.empty() || b.empty()) return {};
    FpPoly conv(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            conv[i + j] = (conv[i + j] + mulmod_u64(a[i], b[j], p)) % p;
    }
    // mod is monic of degree d; long division
    const std::size_t d = mod.size() - 1;
    for (std::size_t t = conv.size(); t-- > d;) {
        u64 c = conv[t];
        if (c == 0) continue;
        conv[t] = 0;
        for (std::size_t j = 0; j < d; ++j) {
            u64 sub = mulmod_u64(c, mod[j], p);
            conv[t - d + j] = (conv[t - d + j] + p - sub) % p;
        }
    }
    conv.resize(d);
    fp_trim(conv);
    return conv;
}

FpPoly fp_powmod_xq(const FpPoly& mod, u64 p, u64 exp_p, unsigned exp_e) {
    // x^(p^e) mod `mod`, by repeated p-th powering of x
    FpPoly x = {0, 1};
    fp_trim(x);
    FpPoly acc = x;
    for (unsigned i = 0; i < exp_e; ++i) {
        FpPoly r = {1};
        FpPoly base = acc;
        u64 e = exp_p;
        while (e) {
            if (e & 1) r = fp_mulmod(r, base, mod, p);
            base = fp_mulmod(base, base, mod, p);
            e >>= 1;
        }
        acc = r;
    }
    return acc;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        // a mod b, b monicized on the fly
        u64 lead_inv = powmod_u64(b.back(), p - 2, p);
        FpPoly r = a;
        while (r.size() >= b.size() && !r.empty()) {
            u64 c = mulmod_u64(r.back(), lead_inv, p);
            if (c != 0) {
                std::size_t shift = r.size() - b.size();
                for (std::size_t j = 0; j < b.size(); ++j) {
                    u64 sub = mulmod_u64(c, b[j], p);
                    r[shift + j] = (r[shift + j] + p - sub) % p;
                }
            }
            r.pop_back();
            fp_trim(r);
        }
        a = b;
        b = r;
    }
    return a;
}

// x^(p^e) - x reduced mod f.
FpPoly fp_xq_minus_x(const FpPoly& f, u64 p, unsigned e) {
    FpPoly g = fp_powmod_xq(f, p, p, e);
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    fp_trim(g);
    return g;
}

bool fp_is_irreducible(const FpPoly& f, u64 p) {
    const unsigned k = static_cast<unsigned>(f.size() - 1);
    if (k == 0) return false;
    if (f.back() != 1) return false;
    if (k == 1) return true;
    // x^(p^k) == x mod f, and gcd(x^(p^(k/d)) - x, f) == 1 for prime d | k
    if (!fp_xq_minus_x(f, p, k).empty()) return false;
    unsigned rem = k;
    std::vector<unsigned> prime_divisors;
    for (unsigned d = 2; d * d <= rem; ++d) {
        if (rem % d != 0) continue;
        prime_divisors.push_back(d);
        while (rem % d == 0) rem /= d;
    }
    if (rem > 1) prime_divisors.push_back(rem);
    for (unsigned d : prime_divisors) {
        FpPoly gc = fp_gcd(fp_xq_minus_x(f, p, k / d), f, p);
        if (gc.size() != 1) return false;
    }
    return true;
}

// Lexicographically smallest (low-degree-first) monic irreducible of degree k.
std::vector<u64> canonical_modulus(u64 p, unsigned k) {
    std::vector<u64> coeffs(k, 0);
    const u64 attempts_cap = 4'000'000;
    u64 attempts = 0;
    while (true) {
        FpPoly f(coeffs.begin(), coeffs.end());
        f.push_back(1);
        if (fp_is_irreducible(f, p)) {
            std::vector<u64> out(coeffs.begin(), coeffs.end());
            out.push_back(1);
            return out;
        }
        // next candidate in lex order: increment the last coefficient first
        int i = static_cast<int>(k) - 1;
        while (i >= 0) {
            if (++coeffs[i] < p) break;
            coeffs[i] = 0;
            --i;
        }
        if (i < 0 || ++attempts > attempts_cap)
            throw std::runtime_error("no irreducible modulus found (degree too large?)");
    }
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

u64 checked_pow(u64 p, unsigned e, u64 limit) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > limit / p) throw std::overflow_error("p^e exceeds supported range");
        r *= p;
    }
    return r;
}

// ---- PAdicContext --------------------------------------------------------

PAdicContext::PAdicContext(Key, u64 p, unsigned degree, unsigned precision,
                           std::vector<u64> modulus)
    : p_(p), k_(degree), n_(precision), modulus_(std::move(modulus)) {
    if (!is_prime_u64(p_)) throw std::invalid_argument("p is not prime");
    if (k_ < 1) throw std::invalid_argument("extension degree must be >= 1");
    if (n_ < 1) throw std::invalid_argument("precision must be >= 1");
    pn_ = checked_pow(p_, n_, u64(1) << 62);
    pk_ = checked_pow(p_, k_, u64(1) << 62);
    if (modulus_.size() != k_ + 1) throw std::invalid_argument("modulus must have degree k");
    if (modulus_.back() != 1) throw std::invalid_argument("modulus must be monic");
    for (u64& c : modulus_) c %= p_;
    FpPoly f(modulus_.begin(), modulus_.end());
    if (!fp_is_irreducible(f, p_))
        throw std::invalid_argument("modulus is not irreducible mod p");
}

ContextPtr PAdicContext::make(u64 p, unsigned degree, unsigned precision) {
    if (!is_prime_u64(p)) throw std::invalid_argument("p is not prime");
    if (degree < 1) throw std::invalid_argument("extension degree must be >= 1");
    return std::make_shared<PAdicContext>(Key{}, p, degree, precision,
                                          canonical_modulus(p, degree));
}

ContextPtr PAdicContext::make(u64 p, unsigned degree, unsigned precision,
                              std::vector<u64> modulus) {
    return std::make_shared<PAdicContext>(Key{}, p, degree, precision, std::move(modulus));
}

std::string PAdicContext::describe() const {
    std::ostringstream os;
    os << "p=" << p_ << " k=" << k_ << " N=" << n_ << " modulus=";
    for (std::size_t i = 0; i < modulus_.size(); ++i) {
        if (i) os << ",";
        os << modulus_[i];
    }
    return os.str();
}

u64 PAdicContext::add_mod(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= pn_ ? s - pn_ : s;
}

u64 PAdicContext::sub_mod(u64 a, u64 b) const { return a >= b ? a - b : a + pn_ - b; }

u64 PAdicContext::mul_mod(u64 a, u64 b) const { return mulmod_u64(a, b, pn_); }

// Reduces a convolution of length <= 2k-1 by the monic modulus, with
// coefficient arithmetic mod `modulus_value` (p or p^N).
std::vector<u64> PAdicContext::reduce_poly_mod(std::vector<u64> conv, u64 mv) const {
    for (std::size_t t = conv.size(); t-- > k_;) {
        u64 c = conv[t];
        conv[t] = 0;
        if (c == 0) continue;
        for (unsigned j = 0; j < k_; ++j) {
            u64 sub = mulmod_u64(c, modulus_[j] % mv, mv);
            conv[t - k_ + j] = (conv[t - k_ + j] + mv - sub) % mv;
        }
    }
    conv.resize(k_);
    return conv;
}

PAdicElement PAdicContext::zero() const {
    return PAdicElement(shared_from_this(), std::vector<u64>(k_, 0));
}

PAdicElement PAdicContext::one() const {
    std::vector<u64> c(k_, 0);
    c[0] = 1 % pn_;
    return PAdicElement(shared_from_this(), std::move(c));
}

PAdicElement PAdicContext::from_integer(std::int64_t v) const {
    std::vector<u64> c(k_, 0);
    std::int64_t m = static_cast<std::int64_t>(pn_);
    std::int64_t r = v % m;
    if (r < 0) r += m;
    c[0] = static_cast<u64>(r);
    return PAdicElement(shared_from_this(), std::move(c));
}

PAdicElement PAdicContext::from_coeffs(std::vector<std::int64_t> coeffs) const {
    if (coeffs.size() > k_) throw std::invalid_argument("too many coefficients");
    std::vector<u64> c(k_, 0);
    std::int64_t m = static_cast<std::int64_t>(pn_);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        std::int64_t r = coeffs[i] % m;
        if (r < 0) r += m;
        c[i] = static_cast<u64>(r);
    }
    return PAdicElement(shared_from_this(), std::move(c));
}

PAdicElement PAdicContext::generator() const {
    if (k_ < 2) throw std::invalid_argument("generator requires extension degree >= 2");
    std::vector<u64> c(k_, 0);
    c[1] = 1;
    return PAdicElement(shared_from_this(), std::move(c));
}

ResidueElement PAdicContext::residue_zero() const {
    return ResidueElement(shared_from_this(), std::vector<u64>(k_, 0));
}

ResidueElement PAdicContext::residue_one() const {
    std::vector<u64> c(k_, 0);
    c[0] = 1 % p_;
    return ResidueElement(shared_from_this(), std::move(c));
}

ResidueElement PAdicContext::residue_from_integer(std::int64_t v) const {
    std::vector<u64> c(k_, 0);
    std::int64_t m = static_cast<std::int64_t>(p_);
    std::int64_t r = v % m;
    if (r < 0) r += m;
    c[0] = static_cast<u64>(r);
    return ResidueElement(shared_from_this(), std::move(c));
}

ResidueElement PAdicContext::residue_from_coeffs(std::vector<std::int64_t> coeffs) const {
    if (coeffs.size() > k_) throw std::invalid_argument("too many coefficients");
    std::vector<u64> c(k_, 0);
    std::int64_t m = static_cast<std::int64_t>(p_);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        std::int64_t r = coeffs[i] % m;
        if (r < 0) r += m;
        c[i] = static_cast<u64>(r);
    }
    return ResidueElement(shared_from_this(), std::move(c));
}

ResidueElement PAdicContext::residue_generator() const {
    if (k_ < 2) throw std::invalid_argument("generator requires extension degree >= 2");
    std::vector<u64> c(k_, 0);
    c[1] = 1;
    return ResidueElement(shared_from_this(), std::move(c));
}

u64 PAdicContext::encode(const ResidueElement& r) const {
    if (!same(r.context())) throw context_mismatch("encode: foreign context");
    u64 idx = 0;
    for (unsigned j = k_; j-- > 0;) idx = idx * p_ + r.coeffs()[j];
    return idx;
}

ResidueElement PAdicContext::decode(u64 index) const {
    std::vector<u64> c(k_, 0);
    for (unsigned j = 0; j < k_; ++j) {
        c[j] = index % p_;
        index /= p_;
    }
    return ResidueElement(shared_from_this(), std::move(c));
}

// ---- ResidueElement ------------------------------------------------------

ResidueElement::ResidueElement(ContextPtr ctx, std::vector<u64> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != ctx_->degree())
        throw std::invalid_argument("residue coefficient count != k");
    for (u64 c : coeffs_)
        if (c >= ctx_->prime()) throw std::invalid_argument("residue coefficient out of range");
}

bool ResidueElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](u64 c) { return c == 0; });
}

static void require_same_ctx(const ContextPtr& a, const ContextPtr& b) {
    if (a.get() != b.get()) throw context_mismatch("elements belong to different contexts");
}

ResidueElement ResidueElement::operator+(const ResidueElement& rhs) const {
    require_same_ctx(ctx_, rhs.ctx_);
    const u64 p = ctx_->prime();
    std::vector<u64> c(coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        u64 s = coeffs_[i] + rhs.coeffs_[i];
        c[i] = s >= p ? s - p : s;
    }
    return ResidueElement(ctx_, std::move(c));
}

ResidueElement ResidueElement::operator-(const ResidueElement& rhs) const {
    require_same_ctx(ctx_, rhs.ctx_);
    const u64 p = ctx_->prime();
    std::vector<u64> c(coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = coeffs_[i] >= rhs.coeffs_[i] ? coeffs_[i] - rhs.coeffs_[i]
                                            : coeffs_[i] + p - rhs.coeffs_[i];
    return ResidueElement(ctx_, std::move(c));
}

ResidueElement ResidueElement::operator-() const {
    const u64 p = ctx_->prime();
    std::vector<u64> c(coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] == 0 ? 0 : p - coeffs_[i];
    return ResidueElement(ctx_, std::move(c));
}

ResidueElement ResidueElement::operator*(const ResidueElement& rhs) const {
    require_same_ctx(ctx_, rhs.ctx_);
    const u64 p = ctx_->prime();
    const unsigned k = ctx_->degree();
    std::vector<u64> conv(2 * k - 1, 0);
    for (unsigned i = 0; i < k; ++i) {
        if (coeffs_[i] == 0) continue;
        for (unsigned j = 0; j < k; ++j)
            conv[i + j] = (conv[i + j] + mulmod_u64(coeffs_[i], rhs.coeffs_[j], p)) % p;
    }
    return ResidueElement(ctx_, ctx_->reduce_poly_mod(std::move(conv), p));
}

ResidueElement ResidueElement::pow(u64 e) const {
    ResidueElement base = *this;
    ResidueElement result = ctx_->residue_one();
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

ResidueElement ResidueElement::inverse() const {
    if (is_zero()) throw non_unit_error("residue inverse of zero");
    return pow(ctx_->field_card() - 2);
}

bool ResidueElement::operator==(const ResidueElement& rhs) const {
    return ctx_.get() == rhs.ctx_.get() && coeffs_ == rhs.coeffs_;
}

bool ResidueElement::operator<(const ResidueElement& rhs) const {
    return std::lexicographical_compare(coeffs_.begin(), coeffs_.end(), rhs.coeffs_.begin(),
                                        rhs.coeffs_.end());
}

std::string ResidueElement::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ":";
        os << coeffs_[i];
    }
    return os.str();
}

// ---- PAdicElement --------------------------------------------------------

PAdicElement::PAdicElement(ContextPtr ctx, std::vector<u64> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != ctx_->degree())
        throw std::invalid_argument("coefficient count != k");
    for (u64 c : coeffs_)
        if (c >= ctx_->coeff_modulus())
            throw std::invalid_argument("coefficient out of range [0, p^N)");
}

bool PAdicElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](u64 c) { return c == 0; });
}

PAdicElement PAdicElement::operator+(const PAdicElement& rhs) const {
    require_same_ctx(ctx_, rhs.ctx_);
    std::vector<u64> c(coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx_->add_mod(coeffs_[i], rhs.coeffs_[i]);
    return PAdicElement(ctx_, std::move(c));
}

PAdicElement PAdicElement::operator-(const PAdicElement& rhs) const {
    require_same_ctx(ctx_, rhs.ctx_);
    std::vector<u64> c(coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx_->sub_mod(coeffs_[i], rhs.coeffs_[i]);
    return PAdicElement(ctx_, std::move(c));
}

PAdicElement PAdicElement::operator-() const {
    std::vector<u64> c(coeffs_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] == 0 ? 0 : ctx_->coeff_modulus() - coeffs_[i];
    return PAdicElement(ctx_, std::move(c));
}

PAdicElement PAdicElement::operator*(const PAdicElement& rhs) const {
    require_same_ctx(ctx_, rhs.ctx_);
    const unsigned k = ctx_->degree();
    const u64 pn = ctx_->coeff_modulus();
    std::vector<u64> conv(2 * k - 1, 0);
    for (unsigned i = 0; i < k; ++i) {
        if (coeffs_[i] == 0) continue;
        for (unsigned j = 0; j < k; ++j)
            conv[i + j] = static_cast<u64>((conv[i + j] + (u128)coeffs_[i] * rhs.coeffs_[j]) % pn);
    }
    return PAdicElement(ctx_, ctx_->reduce_poly_mod(std::move(conv), pn));
}

PAdicElement PAdicElement::pow(u64 e) const {
    PAdicElement base = *this;
    PAdicElement result = ctx_->one();
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

bool PAdicElement::operator==(const PAdicElement& rhs) const {
    return ctx_.get() == rhs.ctx_.get() && coeffs_ == rhs.coeffs_;
}

bool PAdicElement::operator<(const PAdicElement& rhs) const {
    return std::lexicographical_compare(coeffs_.begin(), coeffs_.end(), rhs.coeffs_.begin(),
                                        rhs.coeffs_.end());
}

std::string PAdicElement::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ":";
        os << coeffs_[i];
    }
    return os.str();
}

// ---- operations ----------------------------------------------------------

unsigned val(const PAdicElement& a) {
    const auto& ctx = a.context();
    const u64 p = ctx->prime();
    unsigned best = ctx->precision();
    for (u64 c : a.coeffs()) {
        if (c == 0) continue;
        unsigned v = 0;
        while (c % p == 0) {
            c /= p;
            ++v;
        }
        best = std::min(best, v);
        if (best == 0) break;
    }
    return best;
}

PAdicElement invert(const PAdicElement& a) {
    if (val(a) != 0) throw non_unit_error("invert: input is not a unit");
    const auto& ctx = a.context();
    // Newton iteration b -> b(2 - ab), seeded with the residue inverse;
    // precision doubles each step.
    PAdicElement b = lift(reduce(a).inverse());
    PAdicElement two = ctx->from_integer(2);
    unsigned correct = 1;
    while (correct < ctx->precision()) {
        b = b * (two - a * b);
        correct *= 2;
    }
    return b;
}

ResidueElement reduce(const PAdicElement& a) {
    const auto& ctx = a.context();
    const u64 p = ctx->prime();
    std::vector<u64> c(a.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeffs()[i] % p;
    return ResidueElement(ctx, std::move(c));
}

PAdicElement lift(const ResidueElement& r) {
    return PAdicElement(r.context(), r.coeffs());
}

ResidueElement frobenius(const ResidueElement& r) { return r.pow(r.context()->prime()); }

ResidueElement pth_root(const ResidueElement& r) {
    const auto& ctx = r.context();
    u64 e = 1;
    for (unsigned i = 0; i + 1 < ctx->degree(); ++i) e *= ctx->prime();
    return r.pow(e);
}

std::optional<PAdicElement> pth_root_exact(const PAdicElement& a) {
    const auto& ctx = a.context();
    const u64 p = ctx->prime();
    const unsigned n = ctx->precision();
    if (a.is_zero()) return ctx->zero();
    if (val(a) != 0) return std::nullopt;

    // Digit-by-digit refinement: maintain all roots of c^p = a mod p^(m+1),
    // extending by every residue digit at level m.  The candidate set stays
    // small (the fiber of the p-power map on units), but cap it anyway.
    auto pow_p = [&](const PAdicElement& c) { return c.pow(p); };
    auto matches_to = [&](const PAdicElement& c, unsigned level) {
        return val(pow_p(c) - a) >= level;
    };

    std::vector<PAdicElement> candidates;
    candidates.push_back(lift(pth_root(reduce(a))));

    u64 pm = 1;
    for (unsigned m = 1; m < n; ++m) {
        pm *= p;
        std::vector<PAdicElement> next;
        for (const auto& c : candidates) {
            for (u64 didx = 0; didx < ctx->field_card(); ++didx) {
                PAdicElement delta = lift(ctx->decode(didx));
                PAdicElement scaled = delta * ctx->from_integer(static_cast<std::int64_t>(pm));
                PAdicElement cand = c + scaled;
                if (matches_to(cand, m + 1)) next.push_back(cand);
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.empty()) return std::nullopt;
        if (next.size() > 4096) throw std::runtime_error("pth_root_exact: candidate explosion");
        candidates = std::move(next);
    }
    return *std::min_element(candidates.begin(), candidates.end());
}

// ---- ResidueEmbedding ----------------------------------------------------

ResidueEmbedding::ResidueEmbedding(ContextPtr from, ContextPtr to)
    : from_(std::move(from)), to_(std::move(to)) {
    if (from_->prime() != to_->prime())
        throw std::invalid_argument("embedding requires equal primes");
    if (to_->degree() % from_->degree() != 0)
        throw std::invalid_argument("embedding requires from-degree | to-degree");

    const unsigned kf = from_->degree();
    if (kf == 1) {
        generator_powers_ = {to_->residue_one()};
        return;
    }
    // Send the generator to the canonically smallest root of from's modulus.
    std::optional<ResidueElement> root;
    const u64 card = to_->field_card();
    for (u64 idx = 0; idx < card; ++idx) {
        ResidueElement cand = to_->decode(idx);
        ResidueElement acc = to_->residue_zero();
        for (unsigned j = from_->modulus().size(); j-- > 0;) {
            acc = acc * cand +
                  to_->residue_from_integer(static_cast<std::int64_t>(from_->modulus()[j]));
        }
        if (acc.is_zero()) {
            if (!root || cand < *root) root = cand;
        }
    }
    if (!root) throw std::runtime_error("embedding root not found");
    generator_powers_.reserve(kf);
    ResidueElement acc = to_->residue_one();
    for (unsigned j = 0; j < kf; ++j) {
        generator_powers_.push_back(acc);
        acc = acc * *root;
    }
}

ResidueElement ResidueEmbedding::operator()(const ResidueElement& r) const {
    if (!from_->same(r.context())) throw context_mismatch("embedding: foreign element");
    ResidueElement acc = to_->residue_zero();
    for (unsigned j = 0; j < from_->degree(); ++j) {
        if (r.coeffs()[j] == 0) continue;
        acc = acc + generator_powers_[j] *
                        to_->residue_from_integer(static_cast<std::int64_t>(r.coeffs()[j]));
    }
    return acc;
}

}  // namespace dynamo
