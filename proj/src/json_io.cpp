#include "charp/json_io.hpp"

namespace charp {

std::string rat_to_string(const Rat& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rat rat_from_string(const std::string& s) {
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s));
        long long num = std::stoll(s.substr(0, slash));
        long long den = std::stoll(s.substr(slash + 1));
        if (den == 0) throw PreconditionError("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::invalid_argument&) {
        throw PreconditionError("malformed rational: " + s);
    } catch (const std::out_of_range&) {
        throw PreconditionError("rational out of range: " + s);
    }
}

const json& require_key(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(where, "missing field '" + key + "'");
    return *it;
}

u64 require_uint(const json& j, const std::string& where) {
    if (j.is_number_unsigned()) return j.get<u64>();
    if (j.is_number_integer() && j.get<i64>() >= 0) return (u64)j.get<i64>();
    throw SchemaError(where, "expected a non-negative integer");
}

json field_to_json(const Field& f) {
    json mod = json::array();
    for (u64 c : f.desc().modulus) mod.push_back(c);
    return json{{"p", f.p()}, {"k", f.k()}, {"modulus", mod}};
}

Field field_from_json(const json& j, const std::string& where) {
    u64 p = require_uint(require_key(j, "p", where), where + "/p");
    u64 k = require_uint(require_key(j, "k", where), where + "/k");
    Field f;
    try {
        f = Field::make(p, (int)k);
    } catch (const PreconditionError& e) {
        throw SchemaError(where, e.what());
    }
    const json& mod = require_key(j, "modulus", where);
    if (!mod.is_array()) throw SchemaError(where + "/modulus", "expected an array");
    std::vector<u64> m;
    for (size_t i = 0; i < mod.size(); ++i)
        m.push_back(require_uint(mod[i], where + "/modulus/" + std::to_string(i)));
    if (m != f.desc().modulus)
        throw SchemaError(where + "/modulus",
                          "modulus is not the canonical choice for this (p, k)");
    return f;
}

json element_to_json(const FieldElement& x) {
    json a = json::array();
    for (u64 c : x.coeffs()) a.push_back(c);
    return a;
}

FieldElement element_from_json(const json& j, Field f, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where, "expected a coefficient array");
    if ((int)j.size() != f.k())
        throw SchemaError(where, "expected " + std::to_string(f.k()) + " coefficients");
    std::vector<u64> c;
    for (size_t i = 0; i < j.size(); ++i) {
        u64 v = require_uint(j[i], where + "/" + std::to_string(i));
        if (v >= f.p()) throw SchemaError(where + "/" + std::to_string(i), "residue out of range");
        c.push_back(v);
    }
    return f.from_coeffs(std::move(c));
}

json poly_to_json(const Polynomial& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(element_to_json(c));
    return a;
}

Polynomial poly_from_json(const json& j, Field f, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where, "expected a coefficient array");
    std::vector<FieldElement> c;
    for (size_t i = 0; i < j.size(); ++i)
        c.push_back(element_from_json(j[i], f, where + "/" + std::to_string(i)));
    return Polynomial(f, std::move(c));
}

json ratfun_to_json(const RationalFunction& r) {
    return json{{"num", poly_to_json(r.num())}, {"den", poly_to_json(r.den())}};
}

RationalFunction ratfun_from_json(const json& j, Field f, const std::string& where) {
    Polynomial num = poly_from_json(require_key(j, "num", where), f, where + "/num");
    Polynomial den = poly_from_json(require_key(j, "den", where), f, where + "/den");
    if (den.is_zero()) throw SchemaError(where + "/den", "zero denominator");
    return RationalFunction(num, den);
}

json point_to_json(const Point& p) {
    if (p.is_infinity()) return json("inf");
    return element_to_json(p.value());
}

Point point_from_json(const json& j, Field f, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return Point::infinity(f);
        throw SchemaError(where, "expected \"inf\" or a coefficient array");
    }
    return Point::finite(element_from_json(j, f, where));
}

json rat_to_json(const Rat& r) { return json(rat_to_string(r)); }

Rat rat_from_json(const json& j, const std::string& where) {
    if (!j.is_string()) throw SchemaError(where, "expected a rational string \"a/b\"");
    try {
        return rat_from_string(j.get<std::string>());
    } catch (const PreconditionError& e) {
        throw SchemaError(where, e.what());
    }
}

}  // namespace charp
