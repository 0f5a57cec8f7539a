#include "refrec/exprio.hpp"

#include <json.hpp>

namespace refrec::exprio {

using nlohmann::json;

namespace {

json mpoly_to_node(const MPoly& p) {
    json terms = json::array();
    for (auto& t : p.terms()) {
        json mono = json::object();
        for (int i = 0; i < kNumParams; ++i)
            if (t.first.e[i]) mono[par_name(i)] = t.first.e[i];
        terms.push_back(json::array({t.second.str(), mono}));
    }
    return json{{"op", "poly"}, {"terms", terms}};
}

MPoly mpoly_from_node(const json& n) {
    MPoly p;
    for (auto& t : n.at("terms")) {
        BigQ c(t.at(0).get<std::string>());
        PExpo ex;
        for (auto& [k, v] : t.at(1).items()) {
            auto idx = par_from_name(k);
            if (!idx) throw std::runtime_error("exprio: unknown parameter " + k);
            ex.e[*idx] = v.get<uint16_t>();
        }
        p += MPoly::monomial(ex, c);
    }
    return p;
}

json prat_to_node(const PRat& f) {
    return json{{"op", "rat"}, {"num", mpoly_to_node(f.num())}, {"den", mpoly_to_node(f.den())}};
}

PRat prat_from_node(const json& n) { return PRat(mpoly_from_node(n.at("num")), mpoly_from_node(n.at("den"))); }

json zpoly_to_node(const ZPoly& p) {
    json terms = json::array();
    for (auto& t : p.terms()) {
        json mono = json::object();
        for (int i = 0; i < kMaxZ; ++i)
            if (t.first.e[i]) mono[zvar_name(i)] = t.first.e[i];
        terms.push_back(json::array({prat_to_node(t.second), mono}));
    }
    return json{{"op", "zpoly"}, {"terms", terms}};
}

ZPoly zpoly_from_node(const json& n) {
    ZPoly p;
    for (auto& t : n.at("terms")) {
        PRat c = prat_from_node(t.at(0));
        ZExpo ex;
        for (auto& [k, v] : t.at(1).items()) {
            int idx = -1;
            for (int i = 0; i < kMaxZ; ++i)
                if (k == zvar_name(i)) idx = i;
            if (idx < 0) throw std::runtime_error("exprio: unknown variable " + k);
            ex.e[idx] = v.get<uint16_t>();
        }
        p += ZPoly::monomial(ex, c);
    }
    return p;
}

} // namespace

std::string prat_to_json(const PRat& f) { return prat_to_node(f).dump(); }

PRat prat_from_json(const std::string& s) { return prat_from_node(json::parse(s)); }

std::string zrat_to_json(const ZRat& f) {
    json den = json::array();
    for (auto& fac : f.den_factors()) den.push_back(json::array({zpoly_to_node(fac.first), fac.second}));
    json n{{"op", "zrat"}, {"num", zpoly_to_node(f.num())}, {"den", den}};
    return n.dump();
}

ZRat zrat_from_json(const std::string& s) {
    json n = json::parse(s);
    ZPoly num = zpoly_from_node(n.at("num"));
    std::vector<ZRat::Factor> den;
    for (auto& fac : n.at("den")) den.emplace_back(zpoly_from_node(fac.at(0)), fac.at(1).get<int>());
    return ZRat(std::move(num), std::move(den));
}

} // namespace refrec::exprio
