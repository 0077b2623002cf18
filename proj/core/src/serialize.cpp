#include "hspec/serialize.hpp"

#include "hspec/errors.hpp"

#include <cstdio>
#include <sstream>

namespace hspec::io {

namespace {

std::string float_text(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

template <class F>
auto json_guard(const char* what, F&& f) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed ") + what + ": " + e.what());
    }
}

Json rows_json(const std::vector<FpVector>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) out.push_back(r);
    return out;
}

}  // namespace

Json rational_json(const Rational& x) { return to_string(x); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>())));
    throw ParseError("expected a rational as \"num/den\" or an integer");
}

Json bigint_json(const BigInt& x) { return x.get_str(); }

Json graded_subspace_json(const fplie::GradedSubspace& m) {
    Json degrees = Json::object();
    for (int n = 1; n <= m.cutoff(); ++n) degrees[std::to_string(n)] = rows_json(m.degree(n).rows());
    return {{"cutoff", m.cutoff()}, {"dims", m.dims()}, {"degrees", degrees}};
}

Json mixed_subspace_json(const mixedlie::MixedGradedSubspace& h, const mixedlie::MixedLieAlgebra& algebra) {
    Json degrees = Json::object();
    for (int n = 1; n <= h.cutoff(); ++n) degrees[std::to_string(n)] = rows_json(h.degree_rows(algebra, n));
    return {{"cutoff", h.cutoff()}, {"dims", h.dims()}, {"degrees", degrees}};
}

Json generators_json(const std::vector<mixedlie::GeneralizedBasicCommutator>& gens, const fplie::HallBasis& basis) {
    Json out = Json::array();
    for (const auto& g : gens) out.push_back({{"pi_power", g.pi_power}, {"core", basis.to_string(g.core)}});
    return out;
}

std::string trace_csv(const mixedlie::DensityConstruction& c) {
    std::ostringstream out;
    out << "n,l_circ,partial_dim,lower_bound,ratio,added,stalled\n";
    for (const auto& r : c.trace)
        out << r.n << ',' << r.l_circ << ',' << r.partial_dim << ',' << to_string(r.lower_bound) << ','
            << to_string(r.ratio) << ',' << r.added << ',' << (r.stalled ? 1 : 0) << '\n';
    return out.str();
}

Json trace_json(const mixedlie::DensityConstruction& c) {
    Json rows = Json::array();
    for (const auto& r : c.trace)
        rows.push_back({{"n", r.n},
                        {"l_circ", bigint_json(r.l_circ)},
                        {"partial_dim", bigint_json(r.partial_dim)},
                        {"lower_bound", rational_json(r.lower_bound)},
                        {"ratio", rational_json(r.ratio)},
                        {"added", r.added},
                        {"stalled", r.stalled},
                        {"condition_i", r.condition_i},
                        {"condition_ii", r.condition_ii}});
    return rows;
}

Json normal_form_json(const collect::NormalForm& nf, const fplie::HallBasis& basis) {
    Json out = Json::array();
    for (const auto& e : nf.entries)
        out.push_back({{"core", nf.node_string(e.node, basis)},
                       {"e", e.e},
                       {"j", bigint_json(e.j)},
                       {"exponent", bigint_json(e.exponent)}});
    return out;
}

Json phi_report_json(const collect::PhiCorrespondenceReport& r) {
    return {{"samples", r.samples},
            {"contained", r.contained},
            {"not_contained", r.not_contained},
            {"inconclusive", r.inconclusive},
            {"identity", r.identity},
            {"observed_dims", r.observed_dims},
            {"closure_dims", r.closure_dims},
            {"failures", r.failures},
            {"passed", r.passed()}};
}

Json verdict_json(const Rational& value, ValueKind kind) {
    return {{"value", rational_json(value)}, {"kind", kind == ValueKind::exact ? "exact" : "window"}};
}

Json verdict_json(const hdim::WindowVerdict& v) {
    Json j = verdict_json(v.window_min, ValueKind::window);
    j["argmin_index"] = v.argmin_index;
    j["trend"] = hdim::to_string(v.trend);
    return j;
}

std::string logindex_csv(const hdim::LogIndexSequence& seq) {
    std::ostringstream out;
    out << "i,numerator,denominator,ratio\n";
    for (const auto& e : seq.entries())
        out << e.index << ',' << e.numerator << ',' << e.denominator << ',' << float_text(to_double(e.ratio())) << '\n';
    return out.str();
}

Json logindex_json(const hdim::LogIndexSequence& seq) {
    Json out = Json::array();
    for (const auto& e : seq.entries())
        out.push_back({{"i", e.index},
                       {"numerator", bigint_json(e.numerator)},
                       {"denominator", bigint_json(e.denominator)},
                       {"ratio", verdict_json(e.ratio(), ValueKind::exact)}});
    return out;
}

Json lattice_json(const lattice::PadicLattice& l) {
    Json rows = Json::array();
    for (const auto& r : l.basis()) {
        Json row = Json::array();
        for (const auto& x : r) row.push_back(rational_json(x));
        rows.push_back(row);
    }
    return {{"p", l.p()}, {"basis", rows}, {"exponents", l.exponents()}};
}

lattice::RationalMatrix matrix_from_json(const Json& j) {
    return json_guard("matrix", [&] {
        lattice::RationalMatrix m;
        for (const auto& row : j.at("rows").is_array() ? j.at("rows") : Json::array()) {
            lattice::RationalVector r;
            for (const auto& x : row) r.push_back(rational_from_json(x));
            m.push_back(std::move(r));
        }
        return m;
    });
}

lattice::PadicLattice lattice_from_json(const Json& j) {
    return json_guard("lattice", [&] {
        lattice::RationalMatrix m;
        for (const auto& row : j.at("basis")) {
            lattice::RationalVector r;
            for (const auto& x : row) r.push_back(rational_from_json(x));
            m.push_back(std::move(r));
        }
        return lattice::PadicLattice(j.at("p").get<std::uint64_t>(), m);
    });
}

lattice::GroupAction action_from_json(const Json& j) {
    return json_guard("action", [&] {
        std::vector<lattice::RationalMatrix> gens;
        for (const auto& g : j.at("generators")) {
            lattice::RationalMatrix m;
            for (const auto& row : g) {
                lattice::RationalVector r;
                for (const auto& x : row) r.push_back(rational_from_json(x));
                m.push_back(std::move(r));
            }
            gens.push_back(std::move(m));
        }
        return lattice::GroupAction(j.at("p").get<std::uint64_t>(), std::move(gens));
    });
}

spectra::Zp2Filtration filtration_from_json(const Json& j) {
    return json_guard("spectrum config", [&] {
        spectra::SpectrumTarget target;
        target.p = j.at("p").get<std::uint64_t>();
        for (const auto& x : j.at("X")) target.values.push_back(rational_from_json(x));
        const Json& g = j.at("gaps");
        const std::string mode = g.at("mode").get<std::string>();
        spectra::GapSequence gaps = spectra::GapSequence::tower();
        if (mode == "geometric") {
            gaps = spectra::GapSequence::geometric(g.at("base").get<std::uint64_t>());
        } else if (mode == "explicit") {
            std::vector<BigInt> values;
            for (const auto& v : g.at("values"))
                values.emplace_back(v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>()));
            gaps = spectra::GapSequence::explicit_values(std::move(values));
        } else if (mode != "tower") {
            throw ParseError("unknown gap mode '" + mode + "'");
        }
        return spectra::Zp2Filtration(target, gaps, j.at("i_max").get<std::size_t>());
    });
}

Json filtration_config_json(const spectra::Zp2Filtration& f) {
    Json x = Json::array();
    for (const auto& v : f.target().values) x.push_back(rational_json(v));
    Json gaps;
    switch (f.gaps().mode()) {
        case spectra::GapMode::tower: gaps = {{"mode", "tower"}}; break;
        case spectra::GapMode::geometric: gaps = {{"mode", "geometric"}, {"base", f.gaps().base()}}; break;
        case spectra::GapMode::explicit_values: {
            Json values = Json::array();
            for (const auto& v : f.gaps().values()) values.push_back(bigint_json(v));
            gaps = {{"mode", "explicit"}, {"values", values}};
            break;
        }
    }
    return {{"p", f.target().p}, {"X", x}, {"gaps", gaps}, {"i_max", f.i_max()}};
}

Json filtration_json(const spectra::Zp2Filtration& f) {
    Json terms = Json::array();
    for (const auto& t : f.terms())
        terms.push_back({{"i", t.i},
                         {"k", t.k},
                         {"j", t.j},
                         {"e_prev", bigint_json(t.e_prev)},
                         {"e", bigint_json(t.e_cur)},
                         {"t", bigint_json(t.t)},
                         {"log_index", bigint_json(f.log_index(t.i))}});
    return {{"config", filtration_config_json(f)}, {"terms", terms}};
}

Json subgroup_json(const spectra::RationalSubgroupSpec& h) {
    switch (h.kind) {
        case spectra::SubgroupKind::zero: return {{"kind", "zero"}};
        case spectra::SubgroupKind::full: return {{"kind", "full"}};
        case spectra::SubgroupKind::y_line: return {{"kind", "y_line"}, {"m", h.m}};
        case spectra::SubgroupKind::line: return {{"kind", "line"}, {"m", h.m}, {"b", rational_json(h.b)}};
    }
    return {};
}

spectra::RationalSubgroupSpec subgroup_from_json(const Json& j, std::uint64_t p) {
    return json_guard("subgroup", [&] {
        const std::string kind = j.at("kind").get<std::string>();
        spectra::RationalSubgroupSpec h;
        if (kind == "zero") return h;
        if (kind == "full") {
            h.kind = spectra::SubgroupKind::full;
            return h;
        }
        if (kind == "z") return spectra::RationalSubgroupSpec::z_line(p, j.at("k").get<std::size_t>());
        if (kind == "y_line") {
            h.kind = spectra::SubgroupKind::y_line;
            h.m = j.at("m").get<std::int64_t>();
            return h;
        }
        if (kind == "line") {
            const Rational px(pow_big(p, j.value("m", std::uint64_t{0})));
            return spectra::RationalSubgroupSpec::line_through(p, px, rational_from_json(j.at("b")));
        }
        throw ParseError("unknown subgroup kind '" + kind + "'");
    });
}

Json scan_report_json(const spectra::ScanReport& r, const spectra::SpectrumTarget& target) {
    Json samples = Json::array();
    for (const auto& s : r.samples) {
        Json classes = Json::array();
        for (const auto& cls : s.class_ratios) {
            Json seq = Json::array();
            for (const auto& [i, ratio] : cls) seq.push_back({{"i", i}, {"ratio", rational_json(ratio)}});
            classes.push_back(seq);
        }
        Json minima = Json::array();
        for (const auto& m : s.cycle_minima) minima.push_back(rational_json(m));
        samples.push_back({{"sample", s.sample.describe()},
                           {"spec", subgroup_json(s.sample)},
                           {"classes", classes},
                           {"cycle_minima", minima},
                           {"verdict", s.verdict ? verdict_json(*s.verdict, ValueKind::window) : Json("inconclusive")},
                           {"expected", rational_json(s.expected)}});
    }
    Json values = Json::array();
    for (const auto& v : r.value_set) values.push_back(rational_json(v));
    return {{"value_set", values},
            {"matches_target", r.matches_target(target)},
            {"inconclusive", r.inconclusive},
            {"misclassified", r.misclassified},
            {"samples", samples}};
}

std::string scan_csv(const spectra::ScanReport& r) {
    std::ostringstream out;
    out << "sample,class,i,ratio\n";
    for (std::size_t s = 0; s < r.samples.size(); ++s)
        for (std::size_t k = 0; k < r.samples[s].class_ratios.size(); ++k)
            for (const auto& [i, ratio] : r.samples[s].class_ratios[k])
                out << s << ',' << k + 1 << ',' << i << ',' << float_text(to_double(ratio)) << '\n';
    return out.str();
}

}  // namespace hspec::io
