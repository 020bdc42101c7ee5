#include "dynamo/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace dynamo {

namespace {

bool exps_greater(const Exponents& a, const Exponents& b) {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::int64_t total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), std::int64_t{0});
}

std::string render_term_exps(const Exponents& exps, const std::string& coeff_text,
                             bool coeff_is_one) {
    std::ostringstream os;
    bool wrote_factor = false;
    if (!coeff_is_one) {
        os << coeff_text;
        wrote_factor = true;
    }
    for (std::size_t v = 0; v < exps.size(); ++v) {
        if (exps[v] == 0) continue;
        if (wrote_factor) os << "*";
        os << "X" << v;
        if (exps[v] > 1) os << "^" << exps[v];
        wrote_factor = true;
    }
    if (!wrote_factor) os << coeff_text;  // constant term
    return os.str();
}

}  // namespace

// ---- Polynomial ------------------------------------------------------------

Polynomial::Polynomial(ContextPtr ctx, unsigned dim) : ctx_(std::move(ctx)), dim_(dim) {}

Polynomial::Polynomial(ContextPtr ctx, unsigned dim, std::vector<PTerm> terms)
    : ctx_(std::move(ctx)), dim_(dim), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        if (t.exps.size() != dim_) throw std::invalid_argument("exponent vector length != dim");
        if (!ctx_->same(t.coeff.context()))
            throw context_mismatch("polynomial coefficient from foreign context");
    }
    normalize();
}

void Polynomial::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const PTerm& a, const PTerm& b) { return exps_greater(a.exps, b.exps); });
    std::vector<PTerm> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().exps == t.exps)
            merged.back().coeff = merged.back().coeff + t.coeff;
        else
            merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const PTerm& t) { return t.coeff.is_zero(); }),
                 merged.end());
    terms_ = std::move(merged);
}

std::int64_t Polynomial::degree() const {
    std::int64_t d = -1;
    for (const auto& t : terms_) d = std::max(d, total_degree(t.exps));
    return d;
}

PAdicElement Polynomial::eval(const std::vector<PAdicElement>& point) const {
    if (point.size() != dim_) throw std::invalid_argument("point dimension mismatch");
    for (const auto& x : point)
        if (!ctx_->same(x.context())) throw context_mismatch("eval: point from foreign context");
    PAdicElement acc = ctx_->zero();
    for (const auto& t : terms_) {
        PAdicElement m = t.coeff;
        for (unsigned v = 0; v < dim_; ++v)
            if (t.exps[v] != 0) m = m * point[v].pow(t.exps[v]);
        acc = acc + m;
    }
    return acc;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    if (!ctx_->same(rhs.ctx_) || dim_ != rhs.dim_)
        throw std::invalid_argument("polynomial add: incompatible operands");
    std::vector<PTerm> terms = terms_;
    terms.insert(terms.end(), rhs.terms_.begin(), rhs.terms_.end());
    return Polynomial(ctx_, dim_, std::move(terms));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    if (!ctx_->same(rhs.ctx_) || dim_ != rhs.dim_)
        throw std::invalid_argument("polynomial sub: incompatible operands");
    std::vector<PTerm> terms = terms_;
    for (const auto& t : rhs.terms_) terms.push_back({t.exps, -t.coeff});
    return Polynomial(ctx_, dim_, std::move(terms));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (!ctx_->same(rhs.ctx_) || dim_ != rhs.dim_)
        throw std::invalid_argument("polynomial mul: incompatible operands");
    std::vector<PTerm> terms;
    terms.reserve(terms_.size() * rhs.terms_.size());
    for (const auto& a : terms_) {
        for (const auto& b : rhs.terms_) {
            Exponents e(dim_);
            for (unsigned v = 0; v < dim_; ++v) e[v] = a.exps[v] + b.exps[v];
            terms.push_back({std::move(e), a.coeff * b.coeff});
        }
    }
    return Polynomial(ctx_, dim_, std::move(terms));
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result(ctx_, dim_, {PTerm{Exponents(dim_, 0), ctx_->one()}});
    Polynomial base = *this;
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

Polynomial Polynomial::scaled(const PAdicElement& c) const {
    std::vector<PTerm> terms;
    terms.reserve(terms_.size());
    for (const auto& t : terms_) terms.push_back({t.exps, t.coeff * c});
    return Polynomial(ctx_, dim_, std::move(terms));
}

bool Polynomial::operator==(const Polynomial& rhs) const {
    if (!ctx_->same(rhs.ctx_) || dim_ != rhs.dim_ || terms_.size() != rhs.terms_.size())
        return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exps != rhs.terms_[i].exps || terms_[i].coeff != rhs.terms_[i].coeff)
            return false;
    return true;
}

namespace {

// Renders a unit coefficient as grammar factors.  A coefficient with a single
// nonzero digit c_j becomes "c" with j 'w' factors; general coefficients are
// emitted digit by digit at the term level by the callers below.
template <typename Term, typename CoeffDigits>
std::string render_terms(const std::vector<Term>& terms, CoeffDigits digits) {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        // split the coefficient into per-digit monomials so the text stays
        // inside the grammar (w appears only as a plain factor)
        const auto ds = digits(t);
        for (std::size_t j = 0; j < ds.size(); ++j) {
            if (ds[j] == 0) continue;
            if (!first) os << " + ";
            first = false;
            std::ostringstream coeff;
            coeff << ds[j];
            for (std::size_t r = 0; r < j; ++r) coeff << "*w";
            std::string coeff_text = coeff.str();
            bool is_plain_one = (ds[j] == 1 && j == 0);
            os << render_term_exps(t.exps, coeff_text, is_plain_one);
        }
    }
    if (first) return "0";
    return os.str();
}

}  // namespace

std::string Polynomial::to_string() const {
    return render_terms(terms_, [](const PTerm& t) { return t.coeff.coeffs(); });
}

// ---- ResiduePoly -----------------------------------------------------------

ResiduePoly::ResiduePoly(ContextPtr ctx, unsigned dim) : ctx_(std::move(ctx)), dim_(dim) {}

ResiduePoly::ResiduePoly(ContextPtr ctx, unsigned dim, std::vector<RTerm> terms)
    : ctx_(std::move(ctx)), dim_(dim), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        if (t.exps.size() != dim_) throw std::invalid_argument("exponent vector length != dim");
        if (!ctx_->same(t.coeff.context()))
            throw context_mismatch("polynomial coefficient from foreign context");
    }
    normalize();
}

void ResiduePoly::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const RTerm& a, const RTerm& b) { return exps_greater(a.exps, b.exps); });
    std::vector<RTerm> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().exps == t.exps)
            merged.back().coeff = merged.back().coeff + t.coeff;
        else
            merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const RTerm& t) { return t.coeff.is_zero(); }),
                 merged.end());
    terms_ = std::move(merged);
}

std::int64_t ResiduePoly::degree() const {
    std::int64_t d = -1;
    for (const auto& t : terms_) d = std::max(d, total_degree(t.exps));
    return d;
}

ResidueElement ResiduePoly::eval(const std::vector<ResidueElement>& point) const {
    if (point.size() != dim_) throw std::invalid_argument("point dimension mismatch");
    ResidueElement acc = ctx_->residue_zero();
    for (const auto& t : terms_) {
        ResidueElement m = t.coeff;
        for (unsigned v = 0; v < dim_; ++v)
            if (t.exps[v] != 0) m = m * point[v].pow(t.exps[v]);
        acc = acc + m;
    }
    return acc;
}

bool ResiduePoly::operator==(const ResiduePoly& rhs) const {
    if (!ctx_->same(rhs.ctx_) || dim_ != rhs.dim_ || terms_.size() != rhs.terms_.size())
        return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exps != rhs.terms_[i].exps || terms_[i].coeff != rhs.terms_[i].coeff)
            return false;
    return true;
}

std::string ResiduePoly::to_string() const {
    return render_terms(terms_, [](const RTerm& t) { return t.coeff.coeffs(); });
}

ResiduePoly reduce_poly(const Polynomial& f) {
    std::vector<RTerm> terms;
    for (const auto& t : f.terms()) {
        ResidueElement c = reduce(t.coeff);
        if (!c.is_zero()) terms.push_back({t.exps, std::move(c)});
    }
    return ResiduePoly(f.context(), f.dim(), std::move(terms));
}

Polynomial divide_by_prime(const Polynomial& f) {
    const auto& ctx = f.context();
    const std::uint64_t p = ctx->prime();
    std::vector<PTerm> terms;
    for (const auto& t : f.terms()) {
        std::vector<std::uint64_t> c(t.coeff.coeffs());
        for (auto& digit : c) {
            if (digit % p != 0)
                throw std::invalid_argument("divide_by_prime: coefficient not divisible by p");
            digit /= p;
        }
        terms.push_back({t.exps, PAdicElement(ctx, std::move(c))});
    }
    return Polynomial(ctx, f.dim(), std::move(terms));
}

// ---- parser ----------------------------------------------------------------

namespace {

struct Parser {
    const std::string& text;
    const ContextPtr& ctx;
    unsigned dim;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw parse_error(msg + " at position " + std::to_string(pos));
    }

    std::uint64_t parse_number() {
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected a number");
        std::uint64_t v = 0;
        bool overflow = false;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (v > (UINT64_MAX - 9) / 10) overflow = true;
            if (!overflow) v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
            ++pos;
        }
        if (overflow) fail("number literal too large");
        return v;
    }

    // factor := INTEGER | 'w' | 'X' INDEX ['^' EXPONENT]
    // Returns either a constant multiplier or a variable power.
    struct Factor {
        bool is_var = false;
        unsigned var = 0;
        std::uint32_t exp = 1;
        PAdicElement constant;
    };

    Factor parse_factor() {
        skip_ws();
        Factor f;
        if (pos >= text.size()) fail("expected a factor");
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = parse_number();
            f.constant =
                ctx->from_integer(static_cast<std::int64_t>(v % ctx->coeff_modulus()));
            return f;
        }
        if (c == 'w') {
            ++pos;
            if (ctx->degree() < 2) fail("'w' requires extension degree >= 2");
            f.constant = ctx->generator();
            return f;
        }
        if (c == 'X') {
            ++pos;
            std::uint64_t idx = parse_number();
            if (idx >= dim) fail("variable index out of range");
            f.is_var = true;
            f.var = static_cast<unsigned>(idx);
            skip_ws();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                std::uint64_t e = parse_number();
                if (e > (1u << 20)) fail("exponent too large");
                f.exp = static_cast<std::uint32_t>(e);
            }
            return f;
        }
        fail("unexpected character");
    }

    PTerm parse_term() {
        PTerm t{Exponents(dim, 0), ctx->one()};
        while (true) {
            Factor f = parse_factor();
            if (f.is_var)
                t.exps[f.var] += f.exp;
            else
                t.coeff = t.coeff * f.constant;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        return t;
    }

    Polynomial parse() {
        std::vector<PTerm> terms;
        skip_ws();
        if (pos >= text.size()) fail("empty polynomial");
        bool negate = false;
        if (text[pos] == '-') {
            negate = true;
            ++pos;
        } else if (text[pos] == '+') {
            ++pos;
        }
        while (true) {
            PTerm t = parse_term();
            if (negate) t.coeff = -t.coeff;
            terms.push_back(std::move(t));
            skip_ws();
            if (pos >= text.size()) break;
            if (text[pos] == '+') {
                negate = false;
                ++pos;
            } else if (text[pos] == '-') {
                negate = true;
                ++pos;
            } else {
                fail("expected '+' or '-'");
            }
        }
        return Polynomial(ctx, dim, std::move(terms));
    }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const ContextPtr& ctx, unsigned dim) {
    Parser parser{text, ctx, dim};
    return parser.parse();
}

PAdicElement parse_constant(const std::string& text, const ContextPtr& ctx) {
    Polynomial f = parse_polynomial(text, ctx, 0);
    if (f.is_zero()) return ctx->zero();
    return f.terms().front().coeff;
}

}  // namespace dynamo
