#include "dc/symexpr.hpp"

#include <json.hpp>

#include <sstream>

namespace dc {

using nlohmann::json;

namespace {

const char* PARAM_NAMES[Scalar::NPARAM] = {"m", "g", "a", "sigma", "s", "r2"};

json scalar_to_json(const Scalar& s) {
    json j;
    j["c"] = {s.c.re.str(), s.c.im.str()};
    json pe = json::object();
    for (int i = 0; i < Scalar::NPARAM; ++i)
        if (s.e[i] != 0) pe[PARAM_NAMES[i]] = int(s.e[i]);
    if (!pe.empty()) j["p"] = pe;
    return j;
}

const char* ESYM_NAMES[4] = {"phi", "phit~", "alpha", "XdX"};

std::string esym_name(uint8_t s) {
    switch (s) {
        case esym::sg_phi: return "phi";
        case esym::sg_phi_tilde: return "phi_tilde";
        case esym::alpha: return "alpha";
        case esym::xdx: return "XdX";
    }
    return "esym" + std::to_string(int(s));
}

Rat rat_from_str(const std::string& s) {
    auto pos = s.find('/');
    if (pos == std::string::npos) return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, pos)), std::stoll(s.substr(pos + 1)));
}

Scalar scalar_from_json(const json& j) {
    Scalar s;
    s.c = GRat(rat_from_str(j.at("c")[0].get<std::string>()),
               rat_from_str(j.at("c")[1].get<std::string>()));
    if (j.contains("p")) {
        for (auto it = j["p"].begin(); it != j["p"].end(); ++it) {
            for (int i = 0; i < Scalar::NPARAM; ++i)
                if (it.key() == PARAM_NAMES[i]) s.e[i] = int8_t(it.value().get<int>());
        }
    }
    return s;
}

uint8_t esym_from_name(const std::string& n) {
    if (n == "phi") return esym::sg_phi;
    if (n == "phi_tilde") return esym::sg_phi_tilde;
    if (n == "alpha") return esym::alpha;
    if (n == "XdX") return esym::xdx;
    throw std::runtime_error("unknown exponent symbol: " + n);
}

uint16_t fid_from_name(const std::string& n) {
    for (uint16_t id = 0; id < fid::first_aux; ++id)
        if (FieldRegistry::defined(id) && FieldRegistry::name(id) == n) return id;
    // aux symbols must be registered already (deterministic ids)
    for (uint16_t id = fid::first_aux; id < 2048; ++id)
        if (FieldRegistry::defined(id) && FieldRegistry::name(id) == n) return id;
    throw std::runtime_error("unknown field: " + n);
}

} // namespace

std::string SymExpr::json() const {
    ::nlohmann::json terms = ::nlohmann::json::array();
    for (const auto& m : ms_) {
        ::nlohmann::json t;
        t["coeff"] = scalar_to_json(m.coeff);
        t["lam"] = m.lam;
        ::nlohmann::json exs = ::nlohmann::json::array();
        for (const auto& [s, q] : m.ex) {
            ::nlohmann::json e;
            e["sym"] = esym_name(s);
            e["q"] = scalar_to_json(q);
            exs.push_back(e);
        }
        if (!exs.empty()) t["exp"] = exs;
        ::nlohmann::json ats = ::nlohmann::json::array();
        for (const auto& a : m.atoms) {
            ::nlohmann::json aj;
            aj["f"] = FieldRegistry::name(a.id);
            if (a.dagger) aj["dag"] = true;
            if (a.tilde) aj["tilde"] = true;
            if (a.dx) aj["dx"] = int(a.dx);
            if (a.tder) aj["dt"] = true;
            ats.push_back(aj);
        }
        if (!ats.empty()) t["atoms"] = ats;
        terms.push_back(t);
    }
    ::nlohmann::json out;
    out["terms"] = terms;
    return out.dump();
}

SymExpr SymExpr::from_json(const std::string& s) {
    auto j = ::nlohmann::json::parse(s);
    SymExpr e;
    for (const auto& t : j.at("terms")) {
        Monomial m;
        m.coeff = scalar_from_json(t.at("coeff"));
        m.lam = t.at("lam").get<int>();
        if (t.contains("exp"))
            for (const auto& ej : t["exp"])
                m.ex.emplace_back(esym_from_name(ej.at("sym").get<std::string>()),
                                  scalar_from_json(ej.at("q")));
        if (t.contains("atoms"))
            for (const auto& aj : t["atoms"]) {
                Atom a;
                a.id = fid_from_name(aj.at("f").get<std::string>());
                a.dagger = aj.value("dag", false);
                a.tilde = aj.value("tilde", false);
                a.dx = uint8_t(aj.value("dx", 0));
                a.tder = aj.value("dt", false);
                m.atoms.push_back(a);
            }
        e.push_raw(std::move(m));
    }
    e.renormalize();
    return e;
}

namespace {



std::string scalar_str(const Scalar& s) {
    std::ostringstream o;
    bool nontriv_param = false;
    for (int i = 0; i < Scalar::NPARAM; ++i)
        if (s.e[i]) nontriv_param = true;
    o << "(" << s.c.str() << ")";
    if (nontriv_param) {
        for (int i = 0; i < Scalar::NPARAM; ++i)
            if (s.e[i]) o << PARAM_NAMES[i] << "^" << int(s.e[i]);
    }
    return o.str();
}

std::string scalar_latex(const Scalar& s) {
    std::ostringstream o;
    const GRat& c = s.c;
    auto frac = [](const Rat& r) {
        if (r.d == 1) return std::to_string(r.n);
        return "\\tfrac{" + std::to_string(r.n) + "}{" + std::to_string(r.d) + "}";
    };
    if (c.im.is_zero()) o << frac(c.re);
    else if (c.re.is_zero()) {
        if (c.im == Rat(1)) o << "i";
        else if (c.im == Rat(-1)) o << "-i";
        else o << frac(c.im) << "\\,i";
    } else
        o << "(" << frac(c.re) << (c.im.n > 0 ? "+" : "") << frac(c.im) << "i)";
    const char* pn[Scalar::NPARAM] = {"m", "g", "a", "\\sigma", "\\sqrt{mg}", "\\sqrt{2}"};
    for (int i = 0; i < Scalar::NPARAM; ++i) {
        if (!s.e[i]) continue;
        if (s.e[i] == 1) o << " " << pn[i];
        else o << " " << pn[i] << "^{" << int(s.e[i]) << "}";
    }
    return o.str();
}

std::string atom_latex(const Atom& a) {
    std::string base = FieldRegistry::name(a.id);
    std::string core;
    if (base == "phi1") core = "\\phi_1";
    else if (base == "phi2") core = "\\phi_2";
    else if (base == "psi1") core = "\\psi_1";
    else if (base == "psi2") core = "\\psi_2";
    else if (base == "X" || base == "Xg") core = "X";
    else if (base == "phi") core = "\\varphi";
    else if (base == "phit") core = "\\dot\\varphi";
    else core = "\\mathrm{" + base + "}";
    if (a.tilde) core = "\\tilde{" + core + "}";
    if (a.dagger) core += "^{\\dagger}";
    std::string out = core;
    for (int k = 0; k < a.dx; ++k) out = "\\partial_x " + out;
    if (a.tder) out = "\\partial_t " + out;
    if (a.dx > 0 || a.tder) out = "(" + out + ")";
    return out;
}

} // namespace

std::string SymExpr::str() const {
    if (ms_.empty()) return "0";
    std::ostringstream o;
    bool first = true;
    for (const auto& m : ms_) {
        if (!first) o << " + ";
        first = false;
        o << scalar_str(m.coeff);
        if (m.lam) o << " L^" << m.lam;
        for (const auto& [s, q] : m.ex)
            o << " e{" << esym_name(s) << ":" << scalar_str(q) << "}";
        for (const auto& a : m.atoms) {
            o << " ";
            if (a.tder) o << "dt.";
            for (int k = 0; k < a.dx; ++k) o << "dx.";
            o << FieldRegistry::name(a.id);
            if (a.tilde) o << "~";
            if (a.dagger) o << "+";
        }
    }
    return o.str();
}

std::string SymExpr::latex() const {
    if (ms_.empty()) return "0";
    std::ostringstream o;
    bool first = true;
    for (const auto& m : ms_) {
        if (!first) o << " + ";
        first = false;
        o << scalar_latex(m.coeff);
        if (m.lam) o << "\\,\\lambda^{" << m.lam << "}";
        for (const auto& [s, q] : m.ex) {
            std::string sym;
            switch (s) {
                case esym::sg_phi: sym = "\\varphi"; break;
                case esym::sg_phi_tilde: sym = "\\tilde\\varphi"; break;
                case esym::alpha: sym = "\\alpha"; break;
                case esym::xdx: sym = "X^{\\dagger}X"; break;
                default: sym = "?";
            }
            o << "\\,e^{" << scalar_latex(q) << " " << sym << "}";
        }
        for (const auto& a : m.atoms) o << "\\," << atom_latex(a);
    }
    (void)ESYM_NAMES;
    return o.str();
}

} // namespace dc
