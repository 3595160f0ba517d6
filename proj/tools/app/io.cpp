#include "io.hpp"

#include "siegel/errors.hpp"

namespace siegel::app {

json to_json(const Rational& q) { return siegel::to_string(q); }

Rational rational_from_json(const json& j)
{
    if (!j.is_string())
        throw domain_error("expected a rational string, got " + j.dump());
    return rational_from_string(j.get<std::string>());
}

json to_json(const PadicNumber& x)
{
    const int A = x.abs_precision();
    if (x.is_zero())
        return json::array({A, "0", A});
    return json::array({x.valuation(), x.unit().value().get_str(), A});
}

PadicNumber padic_from_json(const json& j, std::int64_t p)
{
    if (!j.is_array() || j.size() != 3)
        throw domain_error("expected a p-adic triple, got " + j.dump());
    const int v = j[0].get<int>();
    const Integer u(j[1].get<std::string>());
    const int A = j[2].get<int>();
    if (u == 0)
        return PadicNumber::zero(p, A);
    return PadicNumber::from_unit(PadicInt(p, A - v, u), v);
}

json to_json(const HalfIntegralMatrix& T)
{
    json rows = json::array();
    for (int i = 0; i < T.degree(); ++i) {
        json row = json::array();
        for (int k = 0; k < T.degree(); ++k)
            row.push_back(T.g(i, k));
        rows.push_back(row);
    }
    return rows;
}

HalfIntegralMatrix matrix_from_json(const json& j)
{
    if (!j.is_array())
        throw domain_error("expected a matrix, got " + j.dump());
    const int n = static_cast<int>(j.size());
    std::vector<std::int64_t> g;
    for (const auto& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw domain_error("matrix rows must have length " + std::to_string(n));
        for (const auto& x : row)
            g.push_back(x.get<std::int64_t>());
    }
    return HalfIntegralMatrix(n, std::move(g));
}

json to_json(const LambdaElement& f)
{
    json c = json::array();
    for (int i = 0; i < f.x_precision(); ++i) {
        const PadicInt x = f.coeff(i);
        c.push_back(x.is_zero() ? json::array({f.precision(), "0", f.precision()})
                                : to_json(PadicNumber::from_padic_int(x)));
    }
    return json{{"p", f.prime()}, {"M", f.precision()}, {"M_eff", f.certified()},
                {"N", f.x_precision()}, {"coeffs", c}};
}

LambdaElement lambda_from_json(const json& j)
{
    const std::int64_t p = j.at("p").get<std::int64_t>();
    const int M = j.at("M").get<int>();
    const int N = j.at("N").get<int>();
    std::vector<Integer> c;
    for (const auto& t : j.at("coeffs")) {
        const PadicNumber x = padic_from_json(t, p);
        c.push_back(x.is_zero() ? Integer(0) : x.to_padic_int().value());
    }
    return LambdaElement(p, M, N, j.at("M_eff").get<int>(), std::move(c));
}

json to_json(const FracLambda& f)
{
    json j = to_json(f.num);
    j["den_atoms"] = f.den_atoms;
    return j;
}

FracLambda frac_lambda_from_json(const json& j)
{
    FracLambda f;
    f.num = lambda_from_json(j);
    f.den_atoms = j.at("den_atoms").get<std::vector<int>>();
    return f;
}

json to_json(const QPoly& f)
{
    json c = json::array();
    for (const auto& x : f.coeffs())
        c.push_back(to_json(x));
    return c;
}

QPoly qpoly_from_json(const json& j)
{
    std::vector<Rational> c;
    for (const auto& x : j)
        c.push_back(rational_from_json(x));
    return QPoly(std::move(c));
}

json to_json(const SatakeParams& s)
{
    return json{{"n", s.n}, {"kappa", s.kappa}, {"l", s.l}, {"psi", s.exponents}};
}

SatakeParams satake_from_json(const json& j)
{
    SatakeParams s;
    s.n = j.at("n").get<int>();
    s.kappa = j.at("kappa").get<int>();
    s.l = j.at("l").get<std::int64_t>();
    s.exponents = j.at("psi").get<std::vector<std::int64_t>>();
    return s;
}

namespace {

template <class V, class F>
json expansion_doc(const QExpansion<V>& e, const json& spec, F&& value)
{
    json entries = json::array();
    for (const auto& T : e.keys())
        entries.push_back(json{{"G", to_json(T)}, {"value", value(e.at(T))}});
    return json{{"spec", spec},
                {"genus", e.genus()},
                {"bound", e.bound()},
                {"descriptor", e.descriptor()},
                {"entries", entries}};
}

template <class V, class F>
QExpansion<V> expansion_from(const json& doc, F&& value)
{
    QExpansion<V> e(doc.at("genus").get<int>(), doc.at("bound").get<std::int64_t>(),
                    doc.at("descriptor").get<std::string>());
    for (const auto& entry : doc.at("entries"))
        e.insert(matrix_from_json(entry.at("G")), value(entry.at("value")));
    return e;
}

} // namespace

json expansion_json(const QExpansion<Rational>& e, const json& spec)
{
    return expansion_doc(e, spec, [](const Rational& q) { return to_json(q); });
}

json expansion_json(const QExpansion<PadicNumber>& e, const json& spec, std::int64_t p)
{
    json doc = expansion_doc(e, spec, [](const PadicNumber& x) { return to_json(x); });
    doc["p"] = p;
    return doc;
}

json expansion_json(const QExpansion<LambdaElement>& e, const json& spec)
{
    return expansion_doc(e, spec, [](const LambdaElement& f) { return to_json(f); });
}

QExpansion<Rational> rational_expansion_from_json(const json& doc)
{
    return expansion_from<Rational>(doc, [](const json& j) { return rational_from_json(j); });
}

QExpansion<PadicNumber> padic_expansion_from_json(const json& doc)
{
    const std::int64_t p = doc.at("p").get<std::int64_t>();
    return expansion_from<PadicNumber>(doc, [p](const json& j) { return padic_from_json(j, p); });
}

QExpansion<LambdaElement> lambda_expansion_from_json(const json& doc)
{
    return expansion_from<LambdaElement>(doc, [](const json& j) { return lambda_from_json(j); });
}

} // namespace siegel::app
