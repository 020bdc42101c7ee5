#pragma once

// Fixed-precision arithmetic in Z_q, the unramified degree-k extension of
// the p-adic integers, together with its residue field F_{p^k}.
//
// A PAdicContext fixes the prime p, the extension degree k, a monic modulus
// polynomial that is irreducible mod p, and an absolute precision N.
// PAdicElements are coefficient vectors reduced into [0, p^N); residue
// elements are coefficient vectors reduced into [0, p).  All values are
// immutable after construction and every operation is a pure function, so
// contexts and elements may be shared freely across threads.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynamo {

class PAdicContext;
using ContextPtr = std::shared_ptr<const PAdicContext>;

struct context_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct non_unit_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Element of the residue field F_{p^k} = F_p[x]/(modulus mod p).
class ResidueElement {
public:
    ResidueElement() = default;
    ResidueElement(ContextPtr ctx, std::vector<std::uint64_t> coeffs);

    const ContextPtr& context() const { return ctx_; }
    const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
    bool is_zero() const;

    ResidueElement operator+(const ResidueElement& rhs) const;
    ResidueElement operator-(const ResidueElement& rhs) const;
    ResidueElement operator*(const ResidueElement& rhs) const;
    ResidueElement operator-() const;
    ResidueElement pow(std::uint64_t e) const;
    ResidueElement inverse() const;  // throws non_unit_error on zero

    bool operator==(const ResidueElement& rhs) const;
    bool operator!=(const ResidueElement& rhs) const { return !(*this == rhs); }
    // Canonical order: lexicographic on the coefficient vector.
    bool operator<(const ResidueElement& rhs) const;

    std::string to_string() const;

private:
    ContextPtr ctx_;
    std::vector<std::uint64_t> coeffs_;  // size k, entries in [0, p)
    friend class PAdicContext;
};

/// Element of Z_q known modulo p^N.
class PAdicElement {
public:
    PAdicElement() = default;
    PAdicElement(ContextPtr ctx, std::vector<std::uint64_t> coeffs);

    const ContextPtr& context() const { return ctx_; }
    const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
    bool is_zero() const;  // zero at working precision

    PAdicElement operator+(const PAdicElement& rhs) const;
    PAdicElement operator-(const PAdicElement& rhs) const;
    PAdicElement operator*(const PAdicElement& rhs) const;
    PAdicElement operator-() const;
    PAdicElement pow(std::uint64_t e) const;

    bool operator==(const PAdicElement& rhs) const;
    bool operator!=(const PAdicElement& rhs) const { return !(*this == rhs); }
    bool operator<(const PAdicElement& rhs) const;

    std::string to_string() const;

private:
    ContextPtr ctx_;
    std::vector<std::uint64_t> coeffs_;  // size k, entries in [0, p^N)
    friend class PAdicContext;
};

class PAdicContext : public std::enable_shared_from_this<PAdicContext> {
    struct Key {};

public:
    // Builds a context with the canonical modulus: the lexicographically
    // smallest monic irreducible polynomial of degree k over F_p,
    // coefficients compared low-degree-first and lifted into [0, p).
    static ContextPtr make(std::uint64_t p, unsigned degree, unsigned precision);

    // Same, with an explicit monic modulus given as k+1 coefficients
    // (constant term first; leading coefficient must be 1).
    static ContextPtr make(std::uint64_t p, unsigned degree, unsigned precision,
                           std::vector<std::uint64_t> modulus);

    PAdicContext(Key, std::uint64_t p, unsigned degree, unsigned precision,
                 std::vector<std::uint64_t> modulus);

    std::uint64_t prime() const { return p_; }
    unsigned degree() const { return k_; }
    unsigned precision() const { return n_; }
    std::uint64_t coeff_modulus() const { return pn_; }  // p^N
    std::uint64_t field_card() const { return pk_; }     // p^k
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    bool same(const ContextPtr& other) const { return other.get() == this; }
    std::string describe() const;

    // -- element factories ---------------------------------------------
    PAdicElement zero() const;
    PAdicElement one() const;
    PAdicElement from_integer(std::int64_t v) const;
    PAdicElement from_coeffs(std::vector<std::int64_t> coeffs) const;
    PAdicElement generator() const;  // x mod modulus; requires k >= 2

    ResidueElement residue_zero() const;
    ResidueElement residue_one() const;
    ResidueElement residue_from_integer(std::int64_t v) const;
    ResidueElement residue_from_coeffs(std::vector<std::int64_t> coeffs) const;
    ResidueElement residue_generator() const;

    // Residue elements are indexed 0 .. p^k-1 in mixed radix p,
    // least-significant coefficient first.
    std::uint64_t encode(const ResidueElement& r) const;
    ResidueElement decode(std::uint64_t index) const;

private:
    std::uint64_t p_;
    unsigned k_;
    unsigned n_;
    std::uint64_t pn_;  // p^N
    std::uint64_t pk_;  // p^k
    std::vector<std::uint64_t> modulus_;  // k+1 entries, entries in [0, p), monic

    std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) const;
    std::vector<std::uint64_t> reduce_poly_mod(std::vector<std::uint64_t> conv,
                                               std::uint64_t modulus_value) const;

    friend class PAdicElement;
    friend class ResidueElement;
    friend PAdicElement invert(const PAdicElement&);
};

// -- spec operations -----------------------------------------------------

/// Largest v <= N with p^v dividing every coefficient; N means
/// "indistinguishable from 0 at this precision".
unsigned val(const PAdicElement& a);

/// Multiplicative inverse modulo p^N; input must be a unit (val == 0).
PAdicElement invert(const PAdicElement& a);

/// Coefficientwise reduction modulo p.
ResidueElement reduce(const PAdicElement& a);

/// Canonical section of reduce: coefficientwise lift with coefficients in [0, p).
PAdicElement lift(const ResidueElement& r);

/// r^p, the Frobenius automorphism of F_{p^k}.
ResidueElement frobenius(const ResidueElement& r);

/// The unique s with s^p = r, computed as r^(p^(k-1)).
ResidueElement pth_root(const ResidueElement& r);

/// Exact p-th root in Z_q/(p^N) if one exists: returns the canonically
/// smallest c with c^p == a at precision N.  Defined for units and for the
/// zero representative; other non-units report absence.
std::optional<PAdicElement> pth_root_exact(const PAdicElement& a);

// -- shared number-theoretic helpers --------------------------------------

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// p^e with overflow check; throws std::overflow_error when it exceeds limit.
std::uint64_t checked_pow(std::uint64_t p, unsigned e, std::uint64_t limit);

/// Embedding of the residue field of `from` into the residue field of `to`.
/// Requires the same prime and from.degree() | to.degree().  The generator of
/// `from` is sent to the canonically smallest root of from.modulus() in `to`.
class ResidueEmbedding {
public:
    ResidueEmbedding(ContextPtr from, ContextPtr to);
    ResidueElement operator()(const ResidueElement& r) const;
    const ContextPtr& from() const { return from_; }
    const ContextPtr& to() const { return to_; }

private:
    ContextPtr from_;
    ContextPtr to_;
    std::vector<ResidueElement> generator_powers_;  // root^0 .. root^(k_from-1)
};

}  // namespace dynamo
