#pragma once

#include "dc/scalar.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dc {

enum class Parity : uint8_t { even = 0, odd = 1 };

// --- field ids -------------------------------------------------------------
// Fixed ids give the canonical atom order (field_id, dagger, deriv, side) a
// stable meaning across runs. Aux (nonlocal) symbols get deterministic ids
// computed from (model, branch, i, j, order).
namespace fid {
constexpr uint16_t phi1 = 0;    // BT
constexpr uint16_t phi2 = 1;    // BT
constexpr uint16_t psi1 = 2;    // GT, odd
constexpr uint16_t psi2 = 3;    // GT, odd
constexpr uint16_t X = 4;       // boundary field; even for BT, odd for GT
constexpr uint16_t Xg = 5;      // GT boundary field (odd)
constexpr uint16_t sg_phi = 6;  // SG scalar
constexpr uint16_t sg_phit = 7; // SG d_t phi as independent atom
constexpr uint16_t first_aux = 64;
} // namespace fid

// exponent symbols for exponential factors
namespace esym {
constexpr uint8_t sg_phi = 0;       // phi (plain side)
constexpr uint8_t sg_phi_tilde = 1; // phi-tilde
constexpr uint8_t alpha = 2;        // BT boundary angle (only exponentials exist)
constexpr uint8_t xdx = 3;          // X^dagger X as an exponent (GT K, pre-expansion)
} // namespace esym

struct Atom {
    uint16_t id = 0;
    bool dagger = false;
    bool tilde = false;
    uint8_t dx = 0;
    bool tder = false; // formal d_t tag, resolved by subst_eom

    uint64_t key() const {
        return (uint64_t(id) << 16) | (uint64_t(dagger) << 15) | (uint64_t(dx) << 7) |
               (uint64_t(tilde) << 1) | uint64_t(tder);
    }
    uint64_t base_key() const { // ignores dx and tder: rule lookup key
        Atom a(*this);
        a.dx = 0;
        a.tder = false;
        return a.key();
    }
    friend bool operator<(const Atom& a, const Atom& b) { return a.key() < b.key(); }
    friend bool operator==(const Atom& a, const Atom& b) { return a.key() == b.key(); }
};

Parity atom_parity(const Atom& a);

// registry of field names/parities (builtin + aux)
struct FieldRegistry {
    static void define(uint16_t id, const std::string& name, Parity p);
    static bool defined(uint16_t id);
    static const std::string& name(uint16_t id);
    static Parity parity(uint16_t id);
};

// exponential factor: sorted map esym -> Scalar coefficient
using ExpMap = std::vector<std::pair<uint8_t, Scalar>>;

struct Monomial {
    Scalar coeff = Scalar::one();
    int lam = 0; // power of the spectral parameter
    ExpMap ex;
    std::vector<Atom> atoms;

    // canonical sort of atoms with Koszul sign folded into coeff;
    // returns false if the monomial vanishes (repeated odd atom)
    bool canonicalize();
    Parity parity() const;
    bool scalar_like() const { return atoms.empty(); } // exps allowed
    bool constant_like() const { return atoms.empty() && ex.empty(); }

    // key for merging: everything except the Gaussian-rational coefficient
    int cmp_key(const Monomial& o) const;
};

class SymExpr {
  public:
    SymExpr() = default;
    explicit SymExpr(Monomial m);

    static SymExpr zero() { return SymExpr(); }
    static SymExpr one();
    static SymExpr scalar(const Scalar& s);
    static SymExpr lambda_pow(int k, Scalar s = Scalar::one());
    static SymExpr atom(Atom a, Scalar s = Scalar::one());
    static SymExpr exp_atom(uint8_t sym, Scalar q, Scalar s = Scalar::one());

    const std::vector<Monomial>& terms() const { return ms_; }
    bool is_zero() const { return ms_.empty(); }
    std::size_t size() const { return ms_.size(); }

    SymExpr& operator+=(const SymExpr& o);
    SymExpr& operator-=(const SymExpr& o);
    friend SymExpr operator+(SymExpr a, const SymExpr& b) { return a += b; }
    friend SymExpr operator-(SymExpr a, const SymExpr& b) { return a -= b; }
    friend SymExpr operator*(const SymExpr& a, const SymExpr& b);
    SymExpr operator-() const;
    SymExpr scaled(const Scalar& s) const;
    friend bool operator==(const SymExpr& a, const SymExpr& b);

    int min_lam() const; // throws when zero
    int max_lam() const;
    SymExpr coeff_lambda(int k) const;        // lambda-free coefficient
    SymExpr truncate_lam(int lo, int hi) const;
    SymExpr shift_lam(int k) const;

    std::optional<Parity> uniform_parity() const;

    SymExpr conj() const;      // antilinear: i -> -i, dagger toggle, product reversal
    SymExpr tilde_map() const; // toggle side flag on atoms and exp symbols

    bool contains_atom_base(uint64_t base_key) const;
    bool has_atoms() const;

    std::string str() const;   // compact debug form
    std::string latex() const;
    std::string json() const;  // canonical serialization
    static SymExpr from_json(const std::string& s);

    // building block used by normalization-aware algorithms
    void push_raw(Monomial m); // canonicalize + insert (no global renormalize)
    void renormalize();        // sort + merge + drop zeros

  private:
    std::vector<Monomial> ms_; // invariant: canonical (sorted, merged, nonzero)
};

// convenience builders
inline SymExpr ax(uint16_t id, bool dagger = false, bool tilde = false, uint8_t dx = 0) {
    return SymExpr::atom(Atom{id, dagger, tilde, dx, false});
}
inline SymExpr sc(const Scalar& s) { return SymExpr::scalar(s); }

// substitute atoms: rule(atom) -> replacement expression (same parity) or nullopt.
// Replacement happens in place in the ordered product, so Koszul signs are
// produced by the multiplication itself.
SymExpr subst_atoms(const SymExpr& e,
                    const std::function<std::optional<SymExpr>(const Atom&)>& rule);

// --- derivations -----------------------------------------------------------
struct DerivationRules {
    // d_t of base atoms (key = base_key of dx=0 atom)
    std::vector<std::pair<uint64_t, SymExpr>> dt_atom;
    // d_x rules for atoms that are not plain fields (aux symbols)
    std::vector<std::pair<uint64_t, SymExpr>> dx_atom;
    // derivatives of exponent symbols
    std::vector<std::pair<uint8_t, SymExpr>> dx_esym;
    std::vector<std::pair<uint8_t, SymExpr>> dt_esym;

    const SymExpr* find_dt(uint64_t k) const;
    const SymExpr* find_dx(uint64_t k) const;
    const SymExpr* find_dx_esym(uint8_t s) const;
    const SymExpr* find_dt_esym(uint8_t s) const;
    void set_dt(const Atom& a, SymExpr e);
    void set_dx(const Atom& a, SymExpr e);
    void merge(const DerivationRules& o);
};

// formal x-derivative: raises deriv_order, differentiates exponentials via
// dx_esym (error if an exponent symbol has no rule)
SymExpr d_x(const SymExpr& e, const DerivationRules& rules);

// t-derivative; formal=true leaves unresolved atoms tagged with tder,
// formal=false throws on missing rules (unresolved-symbol error)
SymExpr d_t(const SymExpr& e, const DerivationRules& rules, bool formal = false);

// resolve formal tder tags using rules (the subst_eom pass)
SymExpr resolve_tder(const SymExpr& e, const DerivationRules& rules);

// rewrite aux-symbol x-derivatives through their dx rules (recursively)
SymExpr resolve_aux_dx(const SymExpr& e, const DerivationRules& rules);

// invert an expression of the form  u = u0 (1 + nu)  with u0 an invertible
// monomial and nu nilpotent (or empty); throws if not of this shape
SymExpr invert_unit(const SymExpr& u, int max_pow = 10);

// solve a linear equation  eq == 0  for the given atom (appearing linearly,
// with even invertible coefficient); returns the solved expression
SymExpr linear_solve_for(const SymExpr& eq, const Atom& unknown);

bool expr_contains(const SymExpr& e, const Atom& a);

} // namespace dc
