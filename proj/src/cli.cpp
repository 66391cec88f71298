#include "vbalg/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "vbalg/io.hpp"
#include "vbalg/models.hpp"

namespace vbalg::cli {

namespace {

using io::json;

struct Failure {
    int code;
    std::string kind;
    std::string message;
    std::string section;
    std::string path;
};

struct Options {
    std::string input = "-";
    std::string output;
    std::string id;
    std::uint64_t seed = 1;
    int k = 1;
    std::size_t degree = 0;
    std::string name;
    std::vector<std::size_t> dims{2, 2, 2};
};

std::string read_input(const Options& o, std::istream& in) {
    std::ostringstream s;
    if (o.input == "-") {
        s << in.rdbuf();
    } else {
        std::ifstream f(o.input);
        if (!f) throw Failure{usage_error, "usage", "cannot read '" + o.input + "'", "", ""};
        s << f.rdbuf();
    }
    return s.str();
}

io::Document load(const Options& o, std::istream& in) { return io::parse(read_input(o, in)); }

std::string pick(const io::Document& doc, const std::string& type, const std::string& requested) {
    if (!requested.empty()) return requested;
    auto id = doc.last_of(type);
    if (!id) throw Failure{usage_error, "usage", "document has no " + type + " section", "", ""};
    return *id;
}

const SuperData& superdata_of(const io::Document& doc, const Options& o, std::string& id) {
    id = pick(doc, "superdata", o.id);
    auto it = doc.superdata.find(id);
    if (it == doc.superdata.end()) throw Failure{usage_error, "usage", "no superdata section '" + id + "'", id, ""};
    return it->second;
}

json list(const std::vector<std::string>& ids) { return json(ids); }

// One form section per degree of a mixed-degree scalar form.
std::vector<std::string> scalar_forms(io::DocWriter& w, const Algebroid& a, const Vec& raw) {
    std::vector<std::string> ids;
    RModule r = free_module(a.ring(), 1);
    for (std::size_t p = 0; p <= a.dim(); ++p) ids.push_back(w.form(a, r, scalar_component(a, raw, p)));
    return ids;
}

int write(const io::Document& doc, const Options& o, std::ostream& out) {
    std::string text = io::emit(doc);
    if (o.output.empty()) {
        out << text;
    } else {
        std::ofstream f(o.output);
        if (!f) throw Failure{usage_error, "usage", "cannot write '" + o.output + "'", "", ""};
        f << text;
    }
    return ok;
}

int cmd_check(const Options& o, std::istream& in, std::ostream& out) {
    io::Document doc = load(o, in);
    std::map<std::string, int> counts;
    for (const auto& s : doc.sections) ++counts[s["type"].get<std::string>()];
    out << json{{"valid", true}, {"sections", doc.sections.size()}, {"types", counts}}.dump(1) << "\n";
    return ok;
}

int cmd_example(const Options& o, std::ostream& out) {
    if (o.dims.size() != 3) throw Failure{usage_error, "usage", "--dims takes three values", "", ""};
    SuperData d;
    try {
        d = named_example(o.name, o.seed, RandomDims{o.dims[0], o.dims[1], o.dims[2]});
    } catch (const std::invalid_argument& e) {
        throw Failure{usage_error, "usage", e.what(), "", ""};
    }
    io::DocWriter w;
    std::string id = w.superdata(d);
    w.certificate({{"kind", "example"}, {"name", o.name}, {"seed", o.seed}, {"superdata", id}});
    return write(w.finish(), o, out);
}

int cmd_flat(const Options& o, std::istream& in, std::ostream& out) {
    io::Document doc = load(o, in);
    std::string id;
    const SuperData& d = superdata_of(doc, o, id);
    FlatnessReport r = is_flat_super(d);
    io::DocWriter w;
    std::string sid = w.superdata(d);
    w.certificate({{"kind", "flatness"},
                   {"superdata", sid},
                   {"flat", r.flat},
                   {"square_zero", r.square_zero},
                   {"conditions", r.conditions},
                   {"witnesses", r.witnesses}});
    write(w.finish(), o, out);
    return r.flat ? ok : check_failed;
}

int cmd_gauge(const Options& o, std::istream& in, std::ostream& out) {
    io::Document doc = load(o, in);
    std::string id;
    const SuperData& d = superdata_of(doc, o, id);
    HomForm sigma;
    bool given = false;
    for (const auto& [cid, c] : doc.certificates)
        if (c["kind"] == "gauge" && c.contains("sigma")) {
            sigma = io::parse_hom_form(c["sigma"], d.algebroid.dim());
            given = true;
        }
    if (!given) sigma = random_gauge(o.seed, d);
    if (sigma.degree != 1 || sigma.rows != d.core.dim || sigma.cols != d.side.dim)
        throw Failure{check_failed, "precondition", "sigma must be a Hom(E, C)-valued 1-form", "", ""};
    SuperData g = gauge_transform(d, sigma);
    io::DocWriter w;
    std::string sid = w.superdata(g);
    w.certificate({{"kind", "gauge"},
                   {"superdata", sid},
                   {"sigma", io::hom_form_json(sigma)},
                   {"matches_exponential", gauge_transform_exp(d, sigma) == g}});
    return write(w.finish(), o, out);
}

GradedMetric metric_for(const io::Document& doc, const std::string& sid, const SuperData& d, const Options& o) {
    for (auto it = doc.sections.rbegin(); it != doc.sections.rend(); ++it)
        if ((*it)["type"] == "metric" && (*it)["superdata"] == sid) return doc.metrics.at((*it)["id"].get<std::string>()).metric;
    return o.seed == 0 ? identity_metric(d) : random_metric(o.seed, d);
}

int cmd_cs(const Options& o, std::istream& in, std::ostream& out) {
    io::Document doc = load(o, in);
    std::string id;
    const SuperData& d = superdata_of(doc, o, id);
    if (o.k < 1) throw Failure{usage_error, "usage", "--k must be positive", "", ""};
    GradedMetric g = metric_for(doc, id, d, o);
    CsClass c = cs_class(d, g, o.k);
    io::DocWriter w;
    std::string sid = w.superdata(d);
    std::string mid = w.metric(sid, g);
    json cert{{"kind", "chern-simons"},
              {"k", o.k},
              {"superdata", sid},
              {"metric", mid},
              {"closed", c.closed},
              {"zero", is_zero(c.representative)},
              {"forms", list(scalar_forms(w, d.algebroid, c.representative))},
              {"lower_exact", c.lower_primitive.has_value()}};
    if (c.lower_primitive) cert["primitive_forms"] = list(scalar_forms(w, d.algebroid, *c.lower_primitive));
    w.certificate(cert);
    write(w.finish(), o, out);
    return c.closed ? ok : check_failed;
}

int cmd_classify(const Options& o, std::istream& in, std::ostream& out) {
    io::Document doc = load(o, in);
    std::string id;
    const SuperData& d = superdata_of(doc, o, id);
    if (!regularity(d)) throw Failure{check_failed, "check-failure", "core-anchor does not have constant rank", id, "/del"};
    NormalForm nf = normal_form(d);
    io::DocWriter w;
    std::string sid = w.superdata(d);
    std::string t0 = w.superdata(nf.type0), t1 = w.superdata(nf.type1);
    w.tuple(sid, nf.tuple);
    w.certificate({{"kind", "normal-form"},
                   {"superdata", sid},
                   {"type0", t0},
                   {"type1", t1},
                   {"sigma", io::hom_form_json(nf.sigma)},
                   {"basis_c", io::matrix_json(nf.splitting.basis_c)},
                   {"basis_e", io::matrix_json(nf.splitting.basis_e)},
                   {"round_trip", nf.round_trip},
                   {"omega_class_zero", omega_class_zero(d.algebroid, nf.tuple)}});
    write(w.finish(), o, out);
    return nf.round_trip ? ok : check_failed;
}

int cmd_cohomology(const Options& o, std::istream& in, std::ostream& out) {
    io::Document doc = load(o, in);
    Connection c;
    if (!o.id.empty() || doc.last_of("connection")) {
        std::string id = pick(doc, "connection", o.id);
        auto it = doc.connections.find(id);
        if (it == doc.connections.end()) throw Failure{usage_error, "usage", "no connection section '" + id + "'", id, ""};
        c = it->second;
    } else {
        c = trivial_connection(doc.algebroids.at(pick(doc, "algebroid", "")));
    }
    Cohomology h = cohomology(c, o.degree);
    io::DocWriter w;
    std::string cid = w.connection(c);
    std::vector<std::string> reps;
    for (const auto& f : h.basis) reps.push_back(w.form(c.algebroid, c.coeff, f));
    w.certificate({{"kind", "cohomology"},
                   {"connection", cid},
                   {"degree", o.degree},
                   {"dim", h.dim},
                   {"cycles", h.cycles},
                   {"boundaries", h.boundaries},
                   {"forms", list(reps)}});
    return write(w.finish(), o, out);
}

int cmd_dualize(const Options& o, std::istream& in, std::ostream& out) {
    io::Document doc = load(o, in);
    std::string id;
    const SuperData& d = superdata_of(doc, o, id);
    SuperData dual = dualize(d);
    io::DocWriter w;
    std::string sid = w.superdata(dual);
    w.certificate({{"kind", "dual"}, {"superdata", sid}, {"involutive", dualize(dual) == d}});
    return write(w.finish(), o, out);
}

void report(std::ostream& err, const Failure& f) {
    json e{{"kind", f.kind}, {"message", f.message}};
    if (!f.section.empty()) e["section"] = f.section;
    if (!f.path.empty()) e["path"] = f.path;
    err << json{{"error", e}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact computations with decomposed VB-algebroids", "vbalg"};
    app.require_subcommand(1);
    auto input = [&](CLI::App* s) { s->add_option("input", o.input, "input document, - for stdin"); };
    auto output = [&](CLI::App* s) { s->add_option("--output,-o", o.output, "write the document here"); };
    auto id = [&](CLI::App* s) { s->add_option("--id", o.id, "section id to operate on (default: last)"); };

    auto* check = app.add_subcommand("check", "validate a document");
    input(check);
    auto* flat = app.add_subcommand("flat", "report the flatness conditions and D^2");
    input(flat), output(flat), id(flat);
    auto* gauge = app.add_subcommand("gauge", "apply a gauge (from a 'gauge' certificate, else random)");
    input(gauge), output(gauge), id(gauge);
    gauge->add_option("--seed", o.seed, "seed for a random gauge");
    auto* cs = app.add_subcommand("cs", "Chern-Simons form with exactness certificates");
    input(cs), output(cs), id(cs);
    cs->add_option("--k", o.k, "index k");
    cs->add_option("--seed", o.seed, "metric seed when the document has none; 0 = identity grams");
    auto* classify = app.add_subcommand("classify", "normal form and classifying tuple");
    input(classify), output(classify), id(classify);
    auto* coh = app.add_subcommand("cohomology", "Chevalley-Eilenberg cohomology");
    input(coh), output(coh), id(coh);
    coh->add_option("--degree", o.degree, "degree n of H^n")->required();
    auto* example = app.add_subcommand("example", "emit a model document");
    example->add_option("name", o.name, "example name")->required()->check(CLI::IsMember(example_names()));
    example->add_option("--seed", o.seed, "seed for 'random'");
    example->add_option("--dims", o.dims, "algebra, side and core dimensions for 'random'")->expected(3);
    output(example);
    auto* dual = app.add_subcommand("dualize", "emit the dual superdata");
    input(dual), output(dual), id(dual);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        report(err, {usage_error, "usage", e.what(), "", ""});
        return usage_error;
    }

    try {
        if (*check) return cmd_check(o, in, out);
        if (*flat) return cmd_flat(o, in, out);
        if (*gauge) return cmd_gauge(o, in, out);
        if (*cs) return cmd_cs(o, in, out);
        if (*classify) return cmd_classify(o, in, out);
        if (*coh) return cmd_cohomology(o, in, out);
        if (*example) return cmd_example(o, out);
        if (*dual) return cmd_dualize(o, in, out);
    } catch (const Failure& f) {
        report(err, f);
        return f.code;
    } catch (const io::ParseError& e) {
        int code = e.kind == io::ParseError::Kind::invariant ? check_failed : usage_error;
        report(err, {code, io::kind_name(e.kind), e.message, e.section, e.path});
        return code;
    } catch (const PreconditionError& e) {
        std::string msg = e.what();
        for (const auto& i : e.report.issues) msg += "; " + i;
        report(err, {check_failed, "precondition", msg, "", ""});
        return check_failed;
    } catch (const std::invalid_argument& e) {
        report(err, {usage_error, "usage", e.what(), "", ""});
        return usage_error;
    }
    return usage_error;
}

}  // namespace vbalg::cli
