#include "dc/symexpr.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dc {

// --- registry ----------------------------------------------------------------

namespace {
struct RegistryData {
    std::map<uint16_t, std::pair<std::string, Parity>> table;
    std::mutex mu;
    RegistryData() {
        table[fid::phi1] = {"phi1", Parity::even};
        table[fid::phi2] = {"phi2", Parity::even};
        table[fid::psi1] = {"psi1", Parity::odd};
        table[fid::psi2] = {"psi2", Parity::odd};
        table[fid::X] = {"X", Parity::even};
        table[fid::Xg] = {"Xg", Parity::odd};
        table[fid::sg_phi] = {"phi", Parity::even};
        table[fid::sg_phit] = {"phit", Parity::even};
    }
};
RegistryData& reg() {
    static RegistryData r;
    return r;
}
} // namespace

void FieldRegistry::define(uint16_t id, const std::string& name, Parity p) {
    std::lock_guard<std::mutex> lk(reg().mu);
    reg().table[id] = {name, p};
}
bool FieldRegistry::defined(uint16_t id) {
    std::lock_guard<std::mutex> lk(reg().mu);
    return reg().table.count(id) != 0;
}
const std::string& FieldRegistry::name(uint16_t id) {
    std::lock_guard<std::mutex> lk(reg().mu);
    auto it = reg().table.find(id);
    if (it == reg().table.end()) throw std::out_of_range("FieldRegistry: unknown id");
    return it->second.first;
}
Parity FieldRegistry::parity(uint16_t id) {
    std::lock_guard<std::mutex> lk(reg().mu);
    auto it = reg().table.find(id);
    if (it == reg().table.end()) throw std::out_of_range("FieldRegistry: unknown id");
    return it->second.second;
}

Parity atom_parity(const Atom& a) { return FieldRegistry::parity(a.id); }

// --- monomial ----------------------------------------------------------------

bool Monomial::canonicalize() {
    // insertion sort with sign tracking for odd-odd transpositions
    for (std::size_t i = 1; i < atoms.size(); ++i) {
        Atom a = atoms[i];
        bool a_odd = atom_parity(a) == Parity::odd;
        std::size_t j = i;
        while (j > 0 && a < atoms[j - 1]) {
            if (a_odd && atom_parity(atoms[j - 1]) == Parity::odd) coeff.c = -coeff.c;
            atoms[j] = atoms[j - 1];
            --j;
        }
        atoms[j] = a;
    }
    for (std::size_t i = 1; i < atoms.size(); ++i)
        if (atoms[i] == atoms[i - 1] && atom_parity(atoms[i]) == Parity::odd) return false;
    // drop zero exponent entries, keep sorted
    ExpMap out;
    for (auto& [s, q] : ex)
        if (!q.is_zero()) out.emplace_back(s, q);
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    ex = std::move(out);
    return !coeff.is_zero();
}

Parity Monomial::parity() const {
    int odd = 0;
    for (const auto& a : atoms)
        if (atom_parity(a) == Parity::odd) ++odd;
    return (odd % 2) ? Parity::odd : Parity::even;
}

static int cmp_scalar_param(const Scalar& a, const Scalar& b) {
    if (a.e < b.e) return -1;
    if (b.e < a.e) return 1;
    return 0;
}

static int cmp_expmap(const ExpMap& a, const ExpMap& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].first != b[i].first) return a[i].first < b[i].first ? -1 : 1;
        const Scalar& x = a[i].second;
        const Scalar& y = b[i].second;
        if (!(x == y)) return x < y ? -1 : 1;
    }
    return 0;
}

int Monomial::cmp_key(const Monomial& o) const {
    if (lam != o.lam) return lam < o.lam ? -1 : 1;
    if (atoms.size() != o.atoms.size()) return atoms.size() < o.atoms.size() ? -1 : 1;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i].key() != o.atoms[i].key())
            return atoms[i].key() < o.atoms[i].key() ? -1 : 1;
    }
    int c = cmp_expmap(ex, o.ex);
    if (c) return c;
    return cmp_scalar_param(coeff, o.coeff);
}

// --- symexpr core --------------------------------------------------------------

SymExpr::SymExpr(Monomial m) { push_raw(std::move(m)); }

SymExpr SymExpr::one() { return scalar(Scalar::one()); }

SymExpr SymExpr::scalar(const Scalar& s) {
    SymExpr e;
    Monomial m;
    m.coeff = s;
    e.push_raw(std::move(m));
    return e;
}

SymExpr SymExpr::lambda_pow(int k, Scalar s) {
    SymExpr e;
    Monomial m;
    m.coeff = s;
    m.lam = k;
    e.push_raw(std::move(m));
    return e;
}

SymExpr SymExpr::atom(Atom a, Scalar s) {
    SymExpr e;
    Monomial m;
    m.coeff = s;
    m.atoms.push_back(a);
    e.push_raw(std::move(m));
    return e;
}

SymExpr SymExpr::exp_atom(uint8_t sym, Scalar q, Scalar s) {
    SymExpr e;
    Monomial m;
    m.coeff = s;
    if (!q.is_zero()) m.ex.emplace_back(sym, q);
    e.push_raw(std::move(m));
    return e;
}

void SymExpr::push_raw(Monomial m) {
    if (!m.canonicalize()) return;
    ms_.push_back(std::move(m));
    renormalize();
}

void SymExpr::renormalize() {
    std::sort(ms_.begin(), ms_.end(),
              [](const Monomial& a, const Monomial& b) { return a.cmp_key(b) < 0; });
    std::vector<Monomial> out;
    for (auto& m : ms_) {
        if (!out.empty() && out.back().cmp_key(m) == 0) {
            out.back().coeff.c = out.back().coeff.c + m.coeff.c;
            if (out.back().coeff.c.is_zero()) out.pop_back();
        } else {
            out.push_back(std::move(m));
        }
    }
    ms_ = std::move(out);
}

SymExpr& SymExpr::operator+=(const SymExpr& o) {
    ms_.insert(ms_.end(), o.ms_.begin(), o.ms_.end());
    renormalize();
    return *this;
}

SymExpr& SymExpr::operator-=(const SymExpr& o) { return *this += -o; }

SymExpr SymExpr::operator-() const {
    SymExpr r(*this);
    for (auto& m : r.ms_) m.coeff.c = -m.coeff.c;
    return r;
}

SymExpr SymExpr::scaled(const Scalar& s) const {
    if (s.is_zero()) return SymExpr();
    SymExpr r;
    for (auto m : ms_) {
        m.coeff = m.coeff * s;
        r.ms_.push_back(std::move(m));
    }
    r.renormalize();
    return r;
}

namespace {
// merge exponent maps (adds like coefficients; unlike param-monomial exponents
// on the same symbol cannot be represented and throw)
ExpMap merge_ex(const ExpMap& a, const ExpMap& b) {
    ExpMap r;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            const Scalar& x = a[i].second;
            const Scalar& y = b[j].second;
            if (x.e != y.e) throw std::runtime_error("SymExpr: unlike exponent coefficients");
            Scalar s = x;
            s.c = x.c + y.c;
            if (!s.is_zero()) r.emplace_back(a[i].first, s);
            ++i;
            ++j;
        }
    }
    return r;
}

// multiply two canonical monomials; false if product vanishes
bool mul_mono(const Monomial& a, const Monomial& b, Monomial& out) {
    out.coeff = a.coeff * b.coeff;
    if (out.coeff.is_zero()) return false;
    out.lam = a.lam + b.lam;
    out.ex = merge_ex(a.ex, b.ex);
    // merge sorted atom lists with Koszul sign
    out.atoms.clear();
    out.atoms.reserve(a.atoms.size() + b.atoms.size());
    std::size_t i = 0, j = 0;
    int odd_left = 0; // number of odd atoms of `a` not yet emitted
    for (const auto& at : a.atoms)
        if (atom_parity(at) == Parity::odd) ++odd_left;
    bool neg = false;
    while (i < a.atoms.size() || j < b.atoms.size()) {
        bool take_a;
        if (i == a.atoms.size()) take_a = false;
        else if (j == b.atoms.size()) take_a = true;
        else take_a = !(b.atoms[j] < a.atoms[i]);
        if (take_a) {
            if (atom_parity(a.atoms[i]) == Parity::odd) --odd_left;
            out.atoms.push_back(a.atoms[i++]);
        } else {
            const Atom& bb = b.atoms[j];
            if (atom_parity(bb) == Parity::odd) {
                if (odd_left % 2) neg = !neg;
                // repeated odd atom annihilates
                if (i < a.atoms.size() && a.atoms[i] == bb) return false;
                if (!out.atoms.empty() && out.atoms.back() == bb) return false;
            }
            out.atoms.push_back(bb);
            ++j;
        }
    }
    // repeated odd check across the merged list (safety)
    for (std::size_t k = 1; k < out.atoms.size(); ++k)
        if (out.atoms[k] == out.atoms[k - 1] &&
            atom_parity(out.atoms[k]) == Parity::odd)
            return false;
    if (neg) out.coeff.c = -out.coeff.c;
    return true;
}
} // namespace

SymExpr operator*(const SymExpr& a, const SymExpr& b) {
    SymExpr r;
    for (const auto& ma : a.terms())
        for (const auto& mb : b.terms()) {
            Monomial m;
            if (mul_mono(ma, mb, m)) r.ms_.push_back(std::move(m));
        }
    r.renormalize();
    return r;
}

bool operator==(const SymExpr& a, const SymExpr& b) {
    if (a.ms_.size() != b.ms_.size()) return false;
    for (std::size_t i = 0; i < a.ms_.size(); ++i) {
        if (a.ms_[i].cmp_key(b.ms_[i]) != 0) return false;
        if (a.ms_[i].coeff.c != b.ms_[i].coeff.c) return false;
    }
    return true;
}

int SymExpr::min_lam() const {
    if (ms_.empty()) throw std::runtime_error("min_lam of zero expression");
    int r = ms_[0].lam;
    for (const auto& m : ms_) r = std::min(r, m.lam);
    return r;
}

int SymExpr::max_lam() const {
    if (ms_.empty()) throw std::runtime_error("max_lam of zero expression");
    int r = ms_[0].lam;
    for (const auto& m : ms_) r = std::max(r, m.lam);
    return r;
}

SymExpr SymExpr::coeff_lambda(int k) const {
    SymExpr r;
    for (auto m : ms_)
        if (m.lam == k) {
            m.lam = 0;
            r.ms_.push_back(std::move(m));
        }
    r.renormalize();
    return r;
}

SymExpr SymExpr::truncate_lam(int lo, int hi) const {
    SymExpr r;
    for (const auto& m : ms_)
        if (m.lam >= lo && m.lam <= hi) r.ms_.push_back(m);
    r.renormalize();
    return r;
}

SymExpr SymExpr::shift_lam(int k) const {
    SymExpr r(*this);
    for (auto& m : r.ms_) m.lam += k;
    r.renormalize();
    return r;
}

std::optional<Parity> SymExpr::uniform_parity() const {
    if (ms_.empty()) return Parity::even;
    Parity p = ms_[0].parity();
    for (const auto& m : ms_)
        if (m.parity() != p) return std::nullopt;
    return p;
}

SymExpr SymExpr::conj() const {
    SymExpr r;
    for (const auto& m : ms_) {
        Monomial o;
        o.coeff = m.coeff.conj();
        o.lam = m.lam;
        for (const auto& [s, q] : m.ex) o.ex.emplace_back(s, q.conj());
        // product reversal + dagger toggle
        for (auto it = m.atoms.rbegin(); it != m.atoms.rend(); ++it) {
            Atom a = *it;
            a.dagger = !a.dagger;
            o.atoms.push_back(a);
        }
        r.push_raw(std::move(o));
    }
    r.renormalize();
    return r;
}

SymExpr SymExpr::tilde_map() const {
    SymExpr r;
    for (const auto& m : ms_) {
        Monomial o = m;
        for (auto& a : o.atoms) a.tilde = !a.tilde;
        for (auto& [s, q] : o.ex) {
            if (s == esym::sg_phi) s = esym::sg_phi_tilde;
            else if (s == esym::sg_phi_tilde) s = esym::sg_phi;
        }
        std::sort(o.ex.begin(), o.ex.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        r.push_raw(std::move(o));
    }
    r.renormalize();
    return r;
}

bool SymExpr::contains_atom_base(uint64_t base_key) const {
    for (const auto& m : ms_)
        for (const auto& a : m.atoms)
            if (a.base_key() == base_key) return true;
    return false;
}

bool SymExpr::has_atoms() const {
    for (const auto& m : ms_)
        if (!m.atoms.empty()) return true;
    return false;
}

bool expr_contains(const SymExpr& e, const Atom& a) {
    for (const auto& m : e.terms())
        for (const auto& x : m.atoms)
            if (x == a) return true;
    return false;
}

// --- substitution -----------------------------------------------------------

SymExpr subst_atoms(const SymExpr& e,
                    const std::function<std::optional<SymExpr>(const Atom&)>& rule) {
    SymExpr out;
    for (const auto& m : e.terms()) {
        bool hit = false;
        for (const auto& a : m.atoms)
            if (rule(a)) { hit = true; break; }
        if (!hit) {
            SymExpr keep;
            keep.push_raw(m);
            out += keep;
            continue;
        }
        Monomial head;
        head.coeff = m.coeff;
        head.lam = m.lam;
        head.ex = m.ex;
        SymExpr prod;
        prod.push_raw(head);
        for (const auto& a : m.atoms) {
            auto rep = rule(a);
            SymExpr f = rep ? *rep : SymExpr::atom(a);
            if (rep) {
                auto pf = f.uniform_parity();
                if (pf && *pf != atom_parity(a) && !f.is_zero())
                    throw std::runtime_error("subst_atoms: parity-changing substitution");
            }
            prod = prod * f;
        }
        out += prod;
    }
    return out;
}

// --- derivation rules -------------------------------------------------------

static const SymExpr* find_in(const std::vector<std::pair<uint64_t, SymExpr>>& v, uint64_t k) {
    for (const auto& [kk, e] : v)
        if (kk == k) return &e;
    return nullptr;
}
static const SymExpr* find_in8(const std::vector<std::pair<uint8_t, SymExpr>>& v, uint8_t k) {
    for (const auto& [kk, e] : v)
        if (kk == k) return &e;
    return nullptr;
}

const SymExpr* DerivationRules::find_dt(uint64_t k) const { return find_in(dt_atom, k); }
const SymExpr* DerivationRules::find_dx(uint64_t k) const { return find_in(dx_atom, k); }
const SymExpr* DerivationRules::find_dx_esym(uint8_t s) const { return find_in8(dx_esym, s); }
const SymExpr* DerivationRules::find_dt_esym(uint8_t s) const { return find_in8(dt_esym, s); }

void DerivationRules::set_dt(const Atom& a, SymExpr e) {
    uint64_t k = a.base_key();
    for (auto& [kk, ee] : dt_atom)
        if (kk == k) { ee = std::move(e); return; }
    dt_atom.emplace_back(k, std::move(e));
}
void DerivationRules::set_dx(const Atom& a, SymExpr e) {
    uint64_t k = a.base_key();
    for (auto& [kk, ee] : dx_atom)
        if (kk == k) { ee = std::move(e); return; }
    dx_atom.emplace_back(k, std::move(e));
}
void DerivationRules::merge(const DerivationRules& o) {
    for (const auto& [k, e] : o.dt_atom)
        if (!find_dt(k)) dt_atom.emplace_back(k, e);
    for (const auto& [k, e] : o.dx_atom)
        if (!find_dx(k)) dx_atom.emplace_back(k, e);
    for (const auto& [k, e] : o.dx_esym)
        if (!find_dx_esym(k)) dx_esym.emplace_back(k, e);
    for (const auto& [k, e] : o.dt_esym)
        if (!find_dt_esym(k)) dt_esym.emplace_back(k, e);
}

SymExpr d_x(const SymExpr& e, const DerivationRules& rules) {
    SymExpr out;
    for (const auto& m : e.terms()) {
        // atom part: Leibniz, even derivation (no signs)
        for (std::size_t p = 0; p < m.atoms.size(); ++p) {
            Monomial o = m;
            o.atoms[p].dx = static_cast<uint8_t>(o.atoms[p].dx + 1);
            SymExpr t;
            t.push_raw(std::move(o));
            out += t;
        }
        // exponential part
        for (const auto& [s, q] : m.ex) {
            const SymExpr* ds = rules.find_dx_esym(s);
            if (!ds) throw std::runtime_error("d_x: no rule for exponent symbol");
            SymExpr base;
            base.push_raw(m);
            out += base.scaled(q) * (*ds);
        }
    }
    return out;
}

static SymExpr dx_pow(const SymExpr& e, int k, const DerivationRules& rules) {
    SymExpr r = e;
    for (int i = 0; i < k; ++i) r = d_x(r, rules);
    return r;
}

SymExpr d_t(const SymExpr& e, const DerivationRules& rules, bool formal) {
    SymExpr out;
    for (const auto& m : e.terms()) {
        for (std::size_t p = 0; p < m.atoms.size(); ++p) {
            const Atom& a = m.atoms[p];
            const SymExpr* rule = rules.find_dt(a.base_key());
            SymExpr da;
            if (rule) {
                da = dx_pow(*rule, a.dx, rules);
            } else if (formal) {
                Atom t = a;
                t.tder = true;
                da = SymExpr::atom(t);
            } else {
                throw std::runtime_error("d_t: unresolved symbol " +
                                         FieldRegistry::name(a.id));
            }
            // rebuild in place: prefix * da * suffix
            Monomial head;
            head.coeff = m.coeff;
            head.lam = m.lam;
            head.ex = m.ex;
            SymExpr prod;
            prod.push_raw(head);
            for (std::size_t q2 = 0; q2 < m.atoms.size(); ++q2) {
                if (q2 == p) prod = prod * da;
                else prod = prod * SymExpr::atom(m.atoms[q2]);
            }
            out += prod;
        }
        for (const auto& [s, q] : m.ex) {
            const SymExpr* ds = rules.find_dt_esym(s);
            if (!ds) {
                if (!formal) throw std::runtime_error("d_t: no rule for exponent symbol");
                throw std::runtime_error("d_t: formal tag on exponent symbol unsupported");
            }
            SymExpr base;
            base.push_raw(m);
            out += base.scaled(q) * (*ds);
        }
    }
    return out;
}

SymExpr resolve_tder(const SymExpr& e, const DerivationRules& rules) {
    return subst_atoms(e, [&](const Atom& a) -> std::optional<SymExpr> {
        if (!a.tder) return std::nullopt;
        const SymExpr* rule = rules.find_dt(a.base_key());
        if (!rule) throw std::runtime_error("subst_eom: unresolved symbol " +
                                            FieldRegistry::name(a.id));
        return dx_pow(*rule, a.dx, rules);
    });
}

SymExpr resolve_aux_dx(const SymExpr& e, const DerivationRules& rules) {
    SymExpr cur = e;
    for (int guard = 0; guard < 64; ++guard) {
        bool changed = false;
        SymExpr next = subst_atoms(cur, [&](const Atom& a) -> std::optional<SymExpr> {
            if (a.dx == 0 || changed) return std::nullopt;
            const SymExpr* rule = rules.find_dx(a.base_key());
            if (!rule) return std::nullopt;
            changed = true;
            Atom base = a;
            base.dx = 0;
            (void)base;
            return dx_pow(*rule, a.dx - 1, rules);
        });
        cur = std::move(next);
        if (!changed) return cur;
    }
    throw std::runtime_error("resolve_aux_dx: rewrite budget exceeded");
}

// --- algebraic solving --------------------------------------------------------

SymExpr invert_unit(const SymExpr& u, int max_pow) {
    // split atom-free head and the rest
    SymExpr head, rest;
    for (const auto& m : u.terms()) {
        SymExpr t;
        t.push_raw(m);
        if (m.atoms.empty()) head += t;
        else rest += t;
    }
    if (head.is_zero() || head.size() != 1)
        throw std::runtime_error("invert_unit: head is not a single invertible monomial");
    const Monomial& h = head.terms()[0];
    Monomial hinv;
    hinv.coeff = h.coeff.inv();
    hinv.lam = -h.lam;
    for (const auto& [s, q] : h.ex) hinv.ex.emplace_back(s, -q);
    SymExpr ih;
    ih.push_raw(hinv);
    if (rest.is_zero()) return ih;
    SymExpr nu = ih * rest; // must be nilpotent
    SymExpr acc = SymExpr::one();
    SymExpr pw = SymExpr::one();
    for (int k = 1; k <= max_pow; ++k) {
        pw = pw * (-nu);
        if (pw.is_zero()) return acc * ih;
        acc += pw;
    }
    throw std::runtime_error("invert_unit: correction is not nilpotent");
}

SymExpr linear_solve_for(const SymExpr& eq, const Atom& unknown) {
    // eq = (coefficient) * unknown + rest == 0, unknown appearing linearly
    SymExpr coeff, rest;
    for (const auto& m : eq.terms()) {
        int count = 0;
        for (const auto& a : m.atoms)
            if (a == unknown) ++count;
        if (count == 0) {
            SymExpr t;
            t.push_raw(m);
            rest += t;
            continue;
        }
        if (count > 1) throw std::runtime_error("linear_solve_for: unknown appears nonlinearly");
        // factor the unknown out to the left
        Monomial o;
        o.coeff = m.coeff;
        o.lam = m.lam;
        o.ex = m.ex;
        bool u_odd = atom_parity(unknown) == Parity::odd;
        int odd_before = 0;
        for (const auto& a : m.atoms) {
            if (a == unknown) break;
            if (atom_parity(a) == Parity::odd) ++odd_before;
        }
        if (u_odd && (odd_before % 2)) o.coeff.c = -o.coeff.c;
        for (const auto& a : m.atoms)
            if (!(a == unknown)) o.atoms.push_back(a);
        SymExpr t;
        t.push_raw(std::move(o));
        coeff += t;
    }
    if (coeff.is_zero()) throw std::runtime_error("linear_solve_for: unknown not present");
    auto cp = coeff.uniform_parity();
    if (!cp || *cp != Parity::even)
        throw std::runtime_error("linear_solve_for: coefficient must be even");
    return -(invert_unit(coeff) * rest);
}

} // namespace dc
