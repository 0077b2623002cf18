#include "cli.hpp"

#include "hspec/collect.hpp"
#include "hspec/errors.hpp"
#include "hspec/hdim.hpp"
#include "hspec/lattice.hpp"
#include "hspec/mixedlie.hpp"
#include "hspec/serialize.hpp"
#include "hspec/spectra.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>

namespace hspec::cli {

namespace {

using io::Json;

enum class Format { text, json, csv };

struct Common {
    std::string format = "text";
    std::uint64_t seed = 1;
    std::string config;
};

struct Context {
    Format format = Format::text;
    std::uint64_t seed = 1;
    std::ostream* out = nullptr;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) {
        part.erase(0, part.find_first_not_of(" \t"));
        part.erase(part.find_last_not_of(" \t") + 1);
        if (!part.empty()) parts.push_back(part);
    }
    return parts;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void emit_json(const Context& ctx, const Json& j) { *ctx.out << j.dump(2) << '\n'; }

/// "a,b;c,d" with rational entries, rows separated by ';'.
lattice::RationalMatrix parse_matrix(const std::string& text) {
    lattice::RationalMatrix m;
    for (const auto& row : split(text, ';')) {
        lattice::RationalVector r;
        for (const auto& x : split(row, ',')) r.push_back(parse_rational(x));
        m.push_back(std::move(r));
    }
    if (m.empty()) throw ParseError("empty matrix '" + text + "'");
    return m;
}

std::string vector_text(const lattice::RationalVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

std::string lattice_text(const lattice::PadicLattice& l) {
    std::string s;
    for (std::size_t i = 0; i < l.basis().size(); ++i) s += (i ? " " : "") + vector_text(l.basis()[i]);
    return s;
}

/// Largest generator index named in a word, so `--d` can be omitted.
int infer_rank(const std::string& word) {
    static const std::regex gen("x([0-9]+)");
    int d = 1;
    for (auto it = std::sregex_iterator(word.begin(), word.end(), gen); it != std::sregex_iterator(); ++it)
        d = std::max(d, std::stoi((*it)[1].str()));
    return d;
}

Json exact(const Rational& x) { return io::verdict_json(x, io::ValueKind::exact); }
Json exact(const BigInt& x) { return io::verdict_json(Rational(x), io::ValueKind::exact); }

void seed_header(const Context& ctx) {
    if (ctx.format != Format::json) *ctx.out << "# seed " << ctx.seed << '\n';
}

// ---- fplie ---------------------------------------------------------------------------

struct WittArgs {
    int d = 2;
    int n = 1;
};

void run_witt(const Context& ctx, const WittArgs& a) {
    if (a.d < 1 || a.n < 1) throw PreconditionError("witt needs d >= 1 and n >= 1");
    const BigInt dim = fplie::witt_dimension(a.d, a.n);
    switch (ctx.format) {
        case Format::text: *ctx.out << dim.get_str() << '\n'; break;
        case Format::csv: *ctx.out << "d,n,dim\n" << a.d << ',' << a.n << ',' << dim.get_str() << '\n'; break;
        case Format::json: emit_json(ctx, {{"d", a.d}, {"n", a.n}, {"dim", exact(dim)}}); break;
    }
}

struct HallArgs {
    int d = 2;
    int w = 3;
};

void run_hall(const Context& ctx, const HallArgs& a) {
    const fplie::HallBasis basis(a.d, a.w);
    if (ctx.format == Format::json) {
        Json elems = Json::array();
        for (fplie::BasisIndex i = 0; i < basis.size(); ++i)
            elems.push_back({{"rank", i}, {"weight", basis.weight(i)}, {"commutator", basis.to_string(i)}});
        emit_json(ctx, {{"d", a.d}, {"W", a.w}, {"elements", elems}});
        return;
    }
    if (ctx.format == Format::csv) *ctx.out << "rank,weight,commutator\n";
    for (fplie::BasisIndex i = 0; i < basis.size(); ++i) {
        if (ctx.format == Format::csv)
            *ctx.out << i << ',' << basis.weight(i) << ',' << csv_field(basis.to_string(i)) << '\n';
        else
            *ctx.out << i << '\t' << basis.weight(i) << '\t' << basis.to_string(i) << '\n';
    }
}

struct ClosureArgs {
    int d = 2;
    std::uint32_t p = 3;
    int w = 6;
    std::vector<std::string> gens;
    bool mixed = false;
};

struct ClosureResult {
    std::vector<std::size_t> dims;
    std::vector<Rational> density;
    Json subspace;
};

ClosureResult compute_closure(const ClosureArgs& a) {
    ClosureResult r;
    if (a.mixed) {
        const mixedlie::MixedLieAlgebra alg(a.d, a.w, a.p);
        std::vector<mixedlie::GeneralizedBasicCommutator> gens;
        for (const auto& g : a.gens) gens.push_back(alg.parse_generalized(g));
        const auto h = mixedlie::mixed_closure(alg, gens, a.w);
        r.dims = h.dims();
        r.density = mixedlie::mixed_density_sequence(h, a.w);
        r.subspace = io::mixed_subspace_json(h, alg);
    } else {
        const fplie::FreeLieAlgebra alg(a.d, a.w, a.p);
        std::vector<fplie::LieElement> gens;
        for (const auto& g : a.gens) gens.push_back(alg.parse_element(g));
        const auto m = fplie::subalgebra_closure(alg, gens, a.w);
        r.dims = m.dims();
        r.density = fplie::density_sequence(m, a.w);
        r.subspace = io::graded_subspace_json(m);
    }
    return r;
}

void run_closure(const Context& ctx, const ClosureArgs& a) {
    const ClosureResult r = compute_closure(a);
    switch (ctx.format) {
        case Format::json: emit_json(ctx, r.subspace); break;
        case Format::csv:
            *ctx.out << "n,dim\n";
            for (std::size_t n = 0; n < r.dims.size(); ++n) *ctx.out << n + 1 << ',' << r.dims[n] << '\n';
            break;
        case Format::text:
            *ctx.out << "dims";
            for (auto x : r.dims) *ctx.out << ' ' << x;
            *ctx.out << '\n';
            break;
    }
}

void run_density(const Context& ctx, const ClosureArgs& a) {
    const ClosureResult r = compute_closure(a);
    switch (ctx.format) {
        case Format::json: {
            Json seq = Json::array();
            for (std::size_t n = 0; n < r.density.size(); ++n)
                seq.push_back({{"n", n + 1}, {"dim", r.dims[n]}, {"density", exact(r.density[n])}});
            emit_json(ctx, {{"mixed", a.mixed}, {"sequence", seq}});
            break;
        }
        case Format::csv:
            *ctx.out << "n,dim,density\n";
            for (std::size_t n = 0; n < r.density.size(); ++n)
                *ctx.out << n + 1 << ',' << r.dims[n] << ',' << to_string(r.density[n]) << '\n';
            break;
        case Format::text:
            for (std::size_t n = 0; n < r.density.size(); ++n)
                *ctx.out << n + 1 << '\t' << r.dims[n] << '\t' << to_string(r.density[n]) << '\n';
            break;
    }
}

// ---- mixedlie ------------------------------------------------------------------------

struct AlphaArgs {
    std::string alpha = "1/2";
    int d = 2;
    std::uint32_t p = 3;
    int w = 14;
};

void run_construct_alpha(const Context& ctx, const AlphaArgs& a) {
    const mixedlie::MixedLieAlgebra alg(a.d, a.w, a.p);
    const auto c = mixedlie::construct_density_subalgebra(alg, parse_rational(a.alpha), a.w);
    switch (ctx.format) {
        case Format::csv: *ctx.out << io::trace_csv(c); break;
        case Format::json:
            emit_json(ctx, {{"alpha", exact(c.alpha)},
                            {"cutoff", c.cutoff},
                            {"generators", io::generators_json(c.generators, alg.basis())},
                            {"dims", c.dims},
                            {"condition_i_everywhere", c.condition_i_everywhere()},
                            {"condition_ii_stages", c.condition_ii_stages()},
                            {"trace", io::trace_json(c)}});
            break;
        case Format::text:
            *ctx.out << "n\tl_circ\tpartial\tratio\tadded\tstalled\n";
            for (const auto& r : c.trace)
                *ctx.out << r.n << '\t' << r.l_circ.get_str() << '\t' << r.partial_dim.get_str() << '\t'
                         << to_string(r.ratio) << '\t' << r.added << '\t' << (r.stalled ? "yes" : "no") << '\n';
            *ctx.out << "generators " << c.generators.size() << '\n';
            *ctx.out << "condition (i) everywhere: " << (c.condition_i_everywhere() ? "yes" : "no") << '\n';
            *ctx.out << "condition (ii) stages: " << c.condition_ii_stages() << '\n';
            break;
    }
}

// ---- collect -------------------------------------------------------------------------

struct CollectArgs {
    std::uint32_t p = 3;
    int r = 3;
    int d = 0;
    std::string word;
    std::string mode = "class";
};

void run_collect(const Context& ctx, const CollectArgs& a) {
    if (!is_prime(a.p)) throw PreconditionError("p must be prime");
    const int d = a.d > 0 ? a.d : infer_rank(a.word);
    const fplie::HallBasis basis(d, a.r);
    const auto w = collect::parse_word(a.word, basis, a.p);
    const auto mode = a.mode == "p-level" ? collect::CollectMode::p_level : collect::CollectMode::class_cutoff;
    const auto nf = collect::collect(w, a.r, basis, mode);
    switch (ctx.format) {
        case Format::text: *ctx.out << nf.to_string(basis) << '\n'; break;
        case Format::csv:
            *ctx.out << "core,e,j,exponent\n";
            for (const auto& e : nf.entries)
                *ctx.out << csv_field(nf.node_string(e.node, basis)) << ',' << e.e << ',' << e.j.get_str() << ','
                         << e.exponent.get_str() << '\n';
            break;
        case Format::json:
            emit_json(ctx, {{"word", w.to_string(basis)},
                            {"cutoff", a.r},
                            {"mode", a.mode},
                            {"normal_form", nf.to_string(basis)},
                            {"entries", io::normal_form_json(nf, basis)}});
            break;
    }
}

struct PhiArgs {
    std::uint32_t p = 3;
    int w = 7;
    int d = 0;
    std::string word;
};

void run_phi(const Context& ctx, const PhiArgs& a) {
    const int d = a.d > 0 ? a.d : infer_rank(a.word);
    const mixedlie::MixedLieAlgebra alg(d, a.w, a.p);
    const auto word = collect::parse_word(a.word, alg.basis(), a.p);
    const auto r = collect::phi(word, alg);
    switch (ctx.format) {
        case Format::text:
            if (r.identity)
                *ctx.out << "identity\n";
            else
                *ctx.out << "degree " << r.degree << ": " << alg.format(r.value) << '\n';
            break;
        case Format::csv:
            *ctx.out << "degree,value\n" << r.degree << ',' << csv_field(r.identity ? "0" : alg.format(r.value)) << '\n';
            break;
        case Format::json:
            emit_json(ctx, {{"word", word.to_string(alg.basis())},
                            {"identity", r.identity},
                            {"degree", r.degree},
                            {"value", r.identity ? "0" : alg.format(r.value)}});
            break;
    }
}

struct VerifyPhiArgs {
    std::uint32_t p = 3;
    int w = 7;
    int d = 0;
    std::vector<std::string> gens;
    std::size_t samples = 100;
    int max_factors = 6;
    std::uint64_t max_exponent = 3;
};

void run_verify_phi(const Context& ctx, const VerifyPhiArgs& a) {
    int d = a.d;
    if (d <= 0)
        for (const auto& g : a.gens) d = std::max(d, infer_rank(g));
    const mixedlie::MixedLieAlgebra alg(std::max(d, 1), a.w, a.p);
    std::vector<collect::GenBasicGroupCommutator> gens;
    for (const auto& g : a.gens) {
        const auto w = collect::parse_word(g, alg.basis(), a.p);
        if (w.factors().size() != 1 || w.factors()[0].exponent != 1)
            throw PreconditionError("generator '" + g + "' is not a single decorated commutator");
        gens.push_back(w.factors()[0].element);
    }
    collect::PhiSampling sampling;
    sampling.samples = a.samples;
    sampling.max_factors = a.max_factors;
    sampling.max_exponent = a.max_exponent;
    sampling.seed = ctx.seed;
    const auto r = collect::verify_phi_correspondence(gens, alg, sampling);
    if (ctx.format == Format::json) {
        Json j = io::phi_report_json(r);
        j["seed"] = ctx.seed;
        emit_json(ctx, j);
        return;
    }
    seed_header(ctx);
    if (ctx.format == Format::csv) {
        *ctx.out << "samples,contained,not_contained,inconclusive,identity,passed\n"
                 << r.samples << ',' << r.contained << ',' << r.not_contained << ',' << r.inconclusive << ','
                 << r.identity << ',' << (r.passed() ? 1 : 0) << '\n';
        return;
    }
    *ctx.out << "samples " << r.samples << "\ncontained " << r.contained << "\nnot contained " << r.not_contained
             << "\ninconclusive " << r.inconclusive << "\nidentity " << r.identity << '\n'
             << (r.passed() ? "PASS" : "FAIL") << '\n';
    for (const auto& f : r.failures) *ctx.out << "  " << f << '\n';
}

// ---- hdim ----------------------------------------------------------------------------

struct ProductArgs {
    int t = 1;
    int k = 1;
    std::string inner = "0";
    std::string ranks = "2";
    int window = 0;
    std::string inner_numerators;
};

void run_product_hdim(const Context& ctx, const ProductArgs& a) {
    hdim::ProductSubgroupSpec spec;
    spec.t = a.t;
    spec.k = a.k;
    spec.inner_dim = parse_rational(a.inner);
    for (const auto& r : split(a.ranks, ',')) spec.ranks.push_back(std::stoi(r));
    const Rational dim = hdim::product_hdim(spec);

    std::optional<hdim::LogIndexSequence> seq;
    if (a.window > 0) {
        std::vector<BigInt> inner;
        if (!a.inner_numerators.empty()) {
            for (const auto& x : split(a.inner_numerators, ',')) inner.emplace_back(x);
        } else if (spec.inner_dim == 0 || spec.inner_dim == 1) {
            // trivial or full inner factor
            for (int n = 1; n <= a.window; ++n)
                inner.push_back(spec.inner_dim == 0 ? BigInt(0) : hdim::free_factor_logindex(spec.ranks.at(0), n));
        } else {
            throw PreconditionError("--window needs --inner-numerators unless the inner dimension is 0 or 1");
        }
        seq = hdim::product_logindex_sequence(spec, inner, a.window);
    }

    switch (ctx.format) {
        case Format::json: {
            Json j = {{"dimension", exact(dim)}};
            if (seq) {
                j["sequence"] = io::logindex_json(*seq);
                j["window"] = io::verdict_json(hdim::liminf_window(*seq));
            }
            emit_json(ctx, j);
            break;
        }
        case Format::csv:
            if (seq)
                *ctx.out << io::logindex_csv(*seq);
            else
                *ctx.out << "dimension\n" << to_string(dim) << '\n';
            break;
        case Format::text:
            *ctx.out << "dimension (exact) " << to_string(dim) << '\n';
            if (seq) {
                const auto v = hdim::liminf_window(*seq);
                *ctx.out << "window min " << to_string(v.window_min) << " at n=" << v.argmin_index << " trend "
                         << hdim::to_string(v.trend) << '\n';
            }
            break;
    }
}

// ---- lattice -------------------------------------------------------------------------

struct LambdaArgs {
    std::uint64_t p = 3;
    std::vector<std::string> action;
    std::string lattice;
    std::size_t count = 5;
    std::uint64_t c = 1;
};

struct LambdaSetup {
    lattice::PadicLattice l;
    lattice::GroupAction action;
};

LambdaSetup lambda_setup(const LambdaArgs& a) {
    if (a.action.empty()) throw PreconditionError("at least one --action matrix is required");
    std::vector<lattice::RationalMatrix> gens;
    for (const auto& m : a.action) gens.push_back(parse_matrix(m));
    const std::size_t dim = gens.front().size();
    lattice::PadicLattice l = a.lattice.empty() ? lattice::PadicLattice::standard(a.p, dim)
                                                : lattice::PadicLattice(a.p, parse_matrix(a.lattice));
    return {std::move(l), lattice::GroupAction(a.p, std::move(gens))};
}

void run_lambda_series(const Context& ctx, const LambdaArgs& a) {
    const auto setup = lambda_setup(a);
    const auto series = lattice::lambda_series(setup.l, setup.action, a.count);
    if (ctx.format == Format::json) {
        Json terms = Json::array();
        for (std::size_t i = 0; i < series.size(); ++i) {
            const auto [ell, u] = lattice::ell_u(setup.l, series[i]);
            terms.push_back({{"i", i},
                             {"lattice", io::lattice_json(series[i])},
                             {"log_index", exact(BigInt(std::to_string(lattice::log_index(setup.l, series[i]))))},
                             {"ell", ell},
                             {"u", u}});
        }
        emit_json(ctx, {{"p", a.p}, {"terms", terms}});
        return;
    }
    if (ctx.format == Format::csv) *ctx.out << "i,log_index,ell,u,basis\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto [ell, u] = lattice::ell_u(setup.l, series[i]);
        const auto idx = lattice::log_index(setup.l, series[i]);
        if (ctx.format == Format::csv)
            *ctx.out << i << ',' << idx << ',' << ell << ',' << u << ',' << csv_field(lattice_text(series[i])) << '\n';
        else
            *ctx.out << "lambda_" << i << "  index " << idx << "  (ell,u)=(" << ell << ',' << u << ")  "
                     << lattice_text(series[i]) << '\n';
    }
}

void run_c_equiv(const Context& ctx, const LambdaArgs& a) {
    const auto setup = lambda_setup(a);
    const auto series = lattice::lambda_series(setup.l, setup.action, a.count);
    std::vector<lattice::PadicLattice> star;
    for (std::size_t i = 0; i < series.size(); ++i) star.push_back(setup.l.scaled(i));
    const auto ok = lattice::check_c_equivalence(series, star, a.c);
    const bool all = std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
    switch (ctx.format) {
        case Format::json: emit_json(ctx, {{"c", a.c}, {"per_index", ok}, {"equivalent", all}}); break;
        case Format::csv:
            *ctx.out << "i,equivalent\n";
            for (std::size_t i = 0; i < ok.size(); ++i) *ctx.out << i << ',' << (ok[i] ? 1 : 0) << '\n';
            break;
        case Format::text:
            for (std::size_t i = 0; i < ok.size(); ++i) *ctx.out << i << '\t' << (ok[i] ? "yes" : "no") << '\n';
            *ctx.out << (all ? "equivalent" : "not equivalent") << " with c=" << a.c << '\n';
            break;
    }
}

// ---- spectra -------------------------------------------------------------------------

struct SpectrumArgs {
    std::uint64_t p = 3;
    std::string x = "0,1";
    std::string gaps = "tower";
    std::uint64_t base = 4;
    std::string values;
    std::size_t imax = 8;
    std::string spectrum;  // JSON file from build-spectrum
    std::string samples = "z-lines";
    std::size_t lines = 200;
    int max_valuation = 6;
    double tol = 1e-3;
    std::size_t scan_imax = 0;
};

spectra::Zp2Filtration filtration_from_args(const SpectrumArgs& a) {
    if (!a.spectrum.empty()) {
        std::ifstream in(a.spectrum);
        if (!in) throw ParseError("cannot open '" + a.spectrum + "'");
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::exception& e) {
            throw ParseError(std::string("malformed spectrum file: ") + e.what());
        }
        return io::filtration_from_json(j.contains("config") ? j["config"] : j);
    }
    Json cfg = {{"p", a.p}, {"X", split(a.x, ',')}, {"i_max", a.imax}};
    if (a.gaps == "geometric")
        cfg["gaps"] = {{"mode", "geometric"}, {"base", a.base}};
    else if (a.gaps == "explicit")
        cfg["gaps"] = {{"mode", "explicit"}, {"values", split(a.values, ',')}};
    else
        cfg["gaps"] = {{"mode", a.gaps}};
    return io::filtration_from_json(cfg);
}

void run_build_spectrum(const Context& ctx, const SpectrumArgs& a) {
    const auto f = filtration_from_args(a);
    switch (ctx.format) {
        case Format::json: emit_json(ctx, io::filtration_json(f)); break;
        case Format::csv:
            *ctx.out << "i,k,j,t,log_index\n";
            for (const auto& t : f.terms())
                *ctx.out << t.i << ',' << t.k << ',' << t.j << ',' << t.t.get_str() << ','
                         << f.log_index(t.i).get_str() << '\n';
            break;
        case Format::text:
            for (const auto& t : f.terms())
                *ctx.out << "i=" << t.i << " k=" << t.k << " j=" << t.j << " t=" << t.t.get_str()
                         << " log_index=" << f.log_index(t.i).get_str() << '\n';
            break;
    }
}

void run_scan_spectrum(const Context& ctx, const SpectrumArgs& a) {
    auto f = filtration_from_args(a);
    const std::size_t n = f.target().size();
    // The verdict compares the last two complete cycles; four cycles by default.
    const std::size_t horizon = a.scan_imax > 0 ? a.scan_imax : std::max(f.i_max(), 4 * n);
    if (horizon != f.i_max()) f = spectra::Zp2Filtration(f.target(), f.gaps(), horizon);

    std::vector<spectra::RationalSubgroupSpec> samples;
    if (a.samples == "z-lines" || a.samples == "all") {
        samples.emplace_back();
        samples.push_back({spectra::SubgroupKind::full, 0, 0});
        for (std::size_t k = 1; k <= n; ++k) samples.push_back(spectra::RationalSubgroupSpec::z_line(f.target().p, k));
    }
    if (a.samples == "random" || a.samples == "all") {
        std::mt19937_64 rng(ctx.seed);
        const auto lines = spectra::random_lines(f.target().p, a.lines, rng, a.max_valuation);
        samples.insert(samples.end(), lines.begin(), lines.end());
    }
    if (samples.empty()) throw PreconditionError("--samples must be z-lines, random or all");

    const auto report = spectra::spectrum_scan(f, samples, a.tol);
    if (ctx.format == Format::json) {
        Json j = io::scan_report_json(report, f.target());
        j["seed"] = ctx.seed;
        j["i_max"] = f.i_max();
        emit_json(ctx, j);
    } else if (ctx.format == Format::csv) {
        seed_header(ctx);
        *ctx.out << io::scan_csv(report);
    } else {
        seed_header(ctx);
        for (const auto& s : report.samples)
            *ctx.out << s.sample.describe() << '\t' << (s.verdict ? to_string(*s.verdict) : "inconclusive")
                     << "\texpected " << to_string(s.expected) << '\n';
        *ctx.out << "value set {";
        for (std::size_t i = 0; i < report.value_set.size(); ++i)
            *ctx.out << (i ? ", " : "") << to_string(report.value_set[i]);
        *ctx.out << "}\ninconclusive " << report.inconclusive << "\nmisclassified " << report.misclassified << '\n';
    }
    if (report.inconclusive > 0 && report.value_set.empty())
        throw InconclusiveError("no sample reached a verdict; raise the scan horizon");
}

// ---- configuration files -------------------------------------------------------------

std::string json_scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

/// Expands {"subcommand": s, "key": value, ...} into command-line tokens. Keys already present
/// on the command line are skipped so explicit flags win.
std::vector<std::string> expand_config(const std::string& path, const std::vector<std::string>& args) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config '" + path + "'");
    Json cfg;
    try {
        cfg = Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed config: ") + e.what());
    }
    if (!cfg.is_object()) throw ParseError("config must be a JSON object");
    const std::set<std::string> given(args.begin(), args.end());
    std::vector<std::string> tokens;
    for (const auto& [key, value] : cfg.items()) {
        if (key == "subcommand") continue;
        const std::string flag = "--" + key;
        if (given.count(flag)) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) tokens.push_back(flag);
        } else if (value.is_array()) {
            // repeatable options take one token per element
            for (const auto& v : value) {
                tokens.push_back(flag);
                tokens.push_back(json_scalar(v));
            }
        } else {
            tokens.push_back(flag);
            tokens.push_back(json_scalar(value));
        }
    }
    if (cfg.contains("subcommand")) tokens.insert(tokens.begin(), cfg["subcommand"].get<std::string>());
    return tokens;
}

}  // namespace

int run_cli(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hausdorff spectra toolkit: free Lie algebras, collection, lattices and filtrations", "hspec"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--seed", common.seed, "Seed for randomized subcommands");
    app.add_option("--config", common.config, "JSON file with the same keys as the flags");

    std::function<void(const Context&)> action;

    WittArgs witt;
    auto* s = app.add_subcommand("witt", "Dimension of the weight-n component of the free Lie algebra");
    s->add_option("--d", witt.d, "Number of generators");
    s->add_option("--n", witt.n, "Weight")->required();
    s->callback([&] { action = [&](const Context& c) { run_witt(c, witt); }; });

    HallArgs hall;
    s = app.add_subcommand("hall", "List the Hall basis up to a weight");
    s->add_option("--d", hall.d, "Number of generators");
    s->add_option("--W", hall.w, "Weight cutoff")->required();
    s->callback([&] { action = [&](const Context& c) { run_hall(c, hall); }; });

    ClosureArgs closure;
    for (const char* name : {"closure", "density"}) {
        const bool is_density = std::string(name) == "density";
        s = app.add_subcommand(name, is_density ? "Density sequence of a generated subalgebra"
                                                : "Graded subalgebra generated by homogeneous elements");
        s->add_option("--d", closure.d, "Number of generators");
        s->add_option("--p", closure.p, "Coefficient prime");
        s->add_option("--W", closure.w, "Weight cutoff");
        s->add_option("--gen", closure.gens, "Generator (repeatable); with --mixed written pi^k*core")
            ->required()
            ->allow_extra_args(false);
        s->add_flag("--mixed", closure.mixed, "Close in the F_p[pi]-Lie algebra");
        s->callback([&, is_density] {
            action = [&, is_density](const Context& c) {
                is_density ? run_density(c, closure) : run_closure(c, closure);
            };
        });
    }

    AlphaArgs alpha;
    s = app.add_subcommand("construct-alpha", "Build a subalgebra of the mixed algebra with density alpha");
    s->add_option("--alpha", alpha.alpha, "Target density in [0,1]")->required();
    s->add_option("--d", alpha.d, "Number of generators");
    s->add_option("--p", alpha.p, "Odd prime");
    s->add_option("--W", alpha.w, "Weight cutoff");
    s->callback([&] { action = [&](const Context& c) { run_construct_alpha(c, alpha); }; });

    CollectArgs coll;
    s = app.add_subcommand("collect", "Collect a positive word into basic commutators");
    s->add_option("--p", coll.p, "Prime used to split exponents");
    s->add_option("--r", coll.r, "Cutoff class or level")->required();
    s->add_option("--d", coll.d, "Number of generators (default: largest named)");
    s->add_option("--word", coll.word, "Word such as \"x2 x1 [x2,x1]^p^2\"")->required();
    s->add_option("--mode", coll.mode, "class: modulo the lower central series; p-level: modulo the lower p-series")
        ->check(CLI::IsMember({"class", "p-level"}));
    s->callback([&] { action = [&](const Context& c) { run_collect(c, coll); }; });

    PhiArgs phi;
    s = app.add_subcommand("phi", "Leading term of a word in the mixed Lie algebra");
    s->add_option("--p", phi.p, "Odd prime");
    s->add_option("--W", phi.w, "Weight cutoff");
    s->add_option("--d", phi.d, "Number of generators (default: largest named)");
    s->add_option("--word", phi.word, "Word")->required();
    s->callback([&] { action = [&](const Context& c) { run_phi(c, phi); }; });

    VerifyPhiArgs vphi;
    s = app.add_subcommand("verify-phi", "Check leading terms of random words against the mixed closure");
    s->add_option("--p", vphi.p, "Odd prime");
    s->add_option("--W", vphi.w, "Weight cutoff");
    s->add_option("--d", vphi.d, "Number of generators (default: largest named)");
    s->add_option("--gen", vphi.gens, "Decorated commutator such as [x2,x1]^p (repeatable)")
        ->required()
        ->allow_extra_args(false);
    s->add_option("--samples", vphi.samples, "Number of random words");
    s->add_option("--max-factors", vphi.max_factors, "Factors per word");
    s->add_option("--max-exponent", vphi.max_exponent, "Largest exponent per factor");
    s->callback([&] { action = [&](const Context& c) { run_verify_phi(c, vphi); }; });

    ProductArgs prod;
    s = app.add_subcommand("product-hdim", "Dimension of a product subgroup in a product of free factors");
    s->add_option("--t", prod.t, "Number of maximal-rank factors");
    s->add_option("--k", prod.k, "Index of the last full factor");
    s->add_option("--inner", prod.inner, "Dimension of the first factor's subgroup");
    s->add_option("--ranks", prod.ranks, "Comma-separated factor ranks");
    s->add_option("--window", prod.window, "Also print the log-index sequence up to this level");
    s->add_option("--inner-numerators", prod.inner_numerators, "Comma-separated log-indices of the inner subgroup");
    s->callback([&] { action = [&](const Context& c) { run_product_hdim(c, prod); }; });

    LambdaArgs lam;
    for (const char* name : {"lambda-series", "c-equiv"}) {
        const bool is_equiv = std::string(name) == "c-equiv";
        s = app.add_subcommand(name, is_equiv ? "Compare the lower p-series of a module with p^i L"
                                              : "Lower p-series of a lattice under a group action");
        s->add_option("--p", lam.p, "Prime");
        s->add_option("--action", lam.action, "Generator matrix \"a,b;c,d\" acting on rows (repeatable)")
            ->required()
            ->allow_extra_args(false);
        s->add_option("--lattice", lam.lattice, "Starting lattice rows (default: standard)");
        s->add_option("--count", lam.count, "Number of steps");
        if (is_equiv) s->add_option("--c", lam.c, "Commensurability exponent");
        s->callback([&, is_equiv] {
            action = [&, is_equiv](const Context& c) { is_equiv ? run_c_equiv(c, lam) : run_lambda_series(c, lam); };
        });
    }

    SpectrumArgs spec;
    for (const char* name : {"build-spectrum", "scan-spectrum"}) {
        const bool is_scan = std::string(name) == "scan-spectrum";
        s = app.add_subcommand(name, is_scan ? "Classify subgroups of Z_p^2 along a filtration"
                                             : "Filtration of Z_p^2 with a prescribed finite spectrum");
        s->add_option("--p", spec.p, "Prime");
        s->add_option("--X", spec.x, "Comma-separated spectrum 0 = x_1 < ... < x_n = 1");
        s->add_option("--gaps", spec.gaps, "Gap sequence")->check(CLI::IsMember({"tower", "geometric", "explicit"}));
        s->add_option("--base", spec.base, "Base of geometric gaps");
        s->add_option("--values", spec.values, "Comma-separated explicit gaps e(0), e(1), ...");
        s->add_option("--imax", spec.imax, "Last filtration index");
        if (is_scan) {
            s->add_option("--spectrum", spec.spectrum, "JSON written by build-spectrum");
            s->add_option("--samples", spec.samples, "z-lines, random or all")
                ->check(CLI::IsMember({"z-lines", "random", "all"}));
            s->add_option("--lines", spec.lines, "Number of random lines");
            s->add_option("--max-valuation", spec.max_valuation, "Valuation range of random lines");
            s->add_option("--tol", spec.tol, "Distance to a spectrum value accepted as a verdict");
            s->add_option("--horizon", spec.scan_imax, "Index range of the scan (default: max(imax, 4n))");
        }
        s->callback([&, is_scan] {
            action = [&, is_scan](const Context& c) {
                is_scan ? run_scan_spectrum(c, spec) : run_build_spectrum(c, spec);
            };
        });
    }

    try {
        std::vector<std::string> args = args_in;
        const auto cfg = std::find(args.begin(), args.end(), "--config");
        if (cfg != args.end() && cfg + 1 != args.end()) {
            const auto tokens = expand_config(*(cfg + 1), args);
            const auto sub = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
                return app.get_subcommand_no_throw(a) != nullptr;
            });
            std::vector<std::string> merged;
            auto it = args.begin();
            if (sub != args.end()) {
                // subcommand first, then config values, then explicit flags
                merged.assign(args.begin(), sub + 1);
                it = sub + 1;
                for (const auto& t : tokens)
                    if (app.get_subcommand_no_throw(t) == nullptr) merged.push_back(t);
            } else {
                merged = tokens;
            }
            merged.insert(merged.end(), it, args.end());
            args = std::move(merged);
        }
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    Context ctx;
    ctx.format = common.format == "json" ? Format::json : common.format == "csv" ? Format::csv : Format::text;
    ctx.seed = common.seed;
    ctx.out = &out;
    try {
        action(ctx);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << '\n';
        return kPrecondition;
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << '\n';
        return kResource;
    } catch (const InconclusiveError& e) {
        err << "inconclusive: " << e.what() << '\n';
        return kInconclusive;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kOk;
}

}  // namespace hspec::cli
