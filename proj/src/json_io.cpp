#include "harmonic/json_io.hpp"

namespace harmonic {

Json to_json(const CyclotomicNumber& x) {
    Json coeffs = Json::array();
    for (const auto& c : x.coords()) {
        coeffs.push_back(Json::array(
            {c.get_num().get_str(), c.get_den().get_str()}));
    }
    return Json{{"conductor", x.conductor()}, {"coeffs", coeffs}};
}

CyclotomicNumber cyclotomic_from_json(const Json& j) {
    const unsigned conductor = j.at("conductor").get<unsigned>();
    std::vector<Rational> coords;
    for (const auto& pair : j.at("coeffs")) {
        Integer num(pair.at(0).get<std::string>());
        Integer den(pair.at(1).get<std::string>());
        coords.emplace_back(num, den);
    }
    return CyclotomicNumber::from_coords(conductor, std::move(coords));
}

Json to_json(const SymbolicValue& v) {
    Json terms = Json::array();
    for (const auto& [atom, coeff] : v.terms()) {
        Json t;
        t["atom"] = atom_name(atom);
        if (atom.kind == LogAtom::Kind::LogSin) {
            t["k"] = atom.k;
            t["m"] = atom.m;
        }
        t["coeff"] = to_json(coeff);
        terms.push_back(std::move(t));
    }
    return Json{{"terms", terms}};
}

Json to_json(const RelationReport& r) {
    Json indices = Json::array();
    for (const auto& idx : r.indices) indices.push_back(idx.to_string());
    Json coeffs = Json::array();
    for (const auto& c : r.coefficients) coeffs.push_back(to_json(c));
    return Json{{"indices", indices},
                {"coefficients", coeffs},
                {"residual", r.residual},
                {"digits", r.digits}};
}

Json to_json(const SpanResult& s) {
    Json indices = Json::array();
    for (const auto& idx : s.indices) indices.push_back(idx.to_string());
    Json atoms = Json::array();
    for (const auto& a : s.atoms) {
        Json t;
        t["atom"] = atom_name(a);
        if (a.kind == LogAtom::Kind::LogSin) {
            t["k"] = a.k;
            t["m"] = a.m;
        }
        atoms.push_back(std::move(t));
    }
    Json relations = Json::array();
    for (const auto& r : s.relations) relations.push_back(to_json(r));
    return Json{{"indices", indices},
                {"dropped_duplicates", s.dropped_duplicates},
                {"atoms", atoms},
                {"conductor", s.conductor},
                {"dim", s.dim},
                {"relations", relations}};
}

}  // namespace harmonic
