#pragma once

// Sparse multivariate polynomials with coefficients in Z_q/(p^N) or in the
// residue field, and the shared text grammar used by the CLI:
//
//   poly   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := INTEGER | 'w' | 'X' INDEX ['^' EXPONENT]
//
// Whitespace is insignificant; 'w' denotes the extension generator.

#include <cstdint>
#include <string>
#include <vector>

#include "dynamo/padic.hpp"

namespace dynamo {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Exponents = std::vector<std::uint32_t>;

struct PTerm {
    Exponents exps;  // one entry per variable
    PAdicElement coeff;
};

struct RTerm {
    Exponents exps;
    ResidueElement coeff;
};

/// Polynomial over Z_q/(p^N).  Terms are kept sorted by descending exponent
/// vector with distinct exponents and nonzero coefficients.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(ContextPtr ctx, unsigned dim);
    Polynomial(ContextPtr ctx, unsigned dim, std::vector<PTerm> terms);

    const ContextPtr& context() const { return ctx_; }
    unsigned dim() const { return dim_; }
    const std::vector<PTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Total degree; -1 for the zero polynomial.
    std::int64_t degree() const;

    PAdicElement eval(const std::vector<PAdicElement>& point) const;

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial pow(unsigned e) const;
    Polynomial scaled(const PAdicElement& c) const;

    bool operator==(const Polynomial& rhs) const;
    std::string to_string() const;

private:
    ContextPtr ctx_;
    unsigned dim_ = 0;
    std::vector<PTerm> terms_;
    void normalize();
};

/// Polynomial over the residue field, same structural conventions.
class ResiduePoly {
public:
    ResiduePoly() = default;
    ResiduePoly(ContextPtr ctx, unsigned dim);
    ResiduePoly(ContextPtr ctx, unsigned dim, std::vector<RTerm> terms);

    const ContextPtr& context() const { return ctx_; }
    unsigned dim() const { return dim_; }
    const std::vector<RTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::int64_t degree() const;

    ResidueElement eval(const std::vector<ResidueElement>& point) const;

    bool operator==(const ResiduePoly& rhs) const;
    std::string to_string() const;

private:
    ContextPtr ctx_;
    unsigned dim_ = 0;
    std::vector<RTerm> terms_;
    void normalize();
};

/// Coefficientwise reduction mod p; terms with coefficient valuation >= 1 vanish.
ResiduePoly reduce_poly(const Polynomial& f);

/// Exact division of every coefficient by p; requires all valuations >= 1.
Polynomial divide_by_prime(const Polynomial& f);

/// Parses the shared grammar.  Variable indices must lie in [0, dim).
Polynomial parse_polynomial(const std::string& text, const ContextPtr& ctx, unsigned dim);

/// Parses a constant expression (no variables allowed).
PAdicElement parse_constant(const std::string& text, const ContextPtr& ctx);

}  // namespace dynamo
