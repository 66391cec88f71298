#include "vbalg/io.hpp"

#include <set>

namespace vbalg::io {

namespace {

using Kind = ParseError::Kind;

[[noreturn]] void syntax(const std::string& path, const std::string& msg) {
    throw ParseError(Kind::syntax, "", path, msg);
}

const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) syntax(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) syntax(path + "/" + key, "missing field '" + key + "'");
    return *it;
}

std::size_t count(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) syntax(path, "expected a non-negative integer");
    return j.get<std::size_t>();
}

std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) syntax(path, "expected a string");
    return j.get<std::string>();
}

const json& array(const json& j, const std::string& path) {
    if (!j.is_array()) syntax(path, "expected an array");
    return j;
}

json vec_json(const Vec& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(scalar_text(x));
    return out;
}

Vec parse_vec(const json& j, const std::string& path) {
    Vec out;
    std::size_t i = 0;
    for (const auto& x : array(j, path)) {
        try {
            out.push_back(parse_scalar(x));
        } catch (const ParseError& e) {
            syntax(path + "/" + std::to_string(i), e.message);
        }
        ++i;
    }
    return out;
}

Matrix parse_matrix_at(const json& j, const std::string& path) {
    std::size_t r = count(field(j, "rows", path), path + "/rows");
    std::size_t c = count(field(j, "cols", path), path + "/cols");
    Vec e = parse_vec(field(j, "entries", path), path + "/entries");
    if (e.size() != r * c) syntax(path + "/entries", "expected " + std::to_string(r * c) + " entries");
    return Matrix(r, c, std::move(e));
}

std::vector<Matrix> parse_matrices(const json& j, const std::string& path) {
    std::vector<Matrix> out;
    std::size_t i = 0;
    for (const auto& m : array(j, path)) out.push_back(parse_matrix_at(m, path + "/" + std::to_string(i++)));
    return out;
}

json matrices_json(const std::vector<Matrix>& ms) {
    json out = json::array();
    for (const auto& m : ms) out.push_back(matrix_json(m));
    return out;
}

HomForm parse_hom_form_at(const json& j, std::size_t n, const std::string& path) {
    std::size_t p = count(field(j, "degree", path), path + "/degree");
    std::size_t r = count(field(j, "rows", path), path + "/rows");
    std::size_t c = count(field(j, "cols", path), path + "/cols");
    if (p > n) syntax(path + "/degree", "degree exceeds the algebroid rank");
    HomForm f = HomForm::zero(p, n, r, c);
    std::vector<Matrix> comp = parse_matrices(field(j, "components", path), path + "/components");
    if (comp.size() != f.comp.size()) syntax(path + "/components", "expected " + std::to_string(f.comp.size()) + " components");
    for (std::size_t i = 0; i < comp.size(); ++i) {
        if (comp[i].rows() != r || comp[i].cols() != c)
            syntax(path + "/components/" + std::to_string(i), "component has the wrong shape");
        f.comp[i] = comp[i];
    }
    return f;
}

// Sections are parsed in order; references must point backwards.
class Parser {
public:
    Document doc;

    void section(const json& s, std::size_t index) {
        std::string path = "/sections/" + std::to_string(index);
        std::string id, type;
        try {
            id = text(field(s, "id", ""), "/id");
            type = text(field(s, "type", ""), "/type");
        } catch (const ParseError& e) {
            throw ParseError(Kind::syntax, "", path + e.path, e.message);
        }
        if (types_.count(id)) throw ParseError(Kind::syntax, id, "/id", "duplicate section id '" + id + "'");
        canon_ = s;
        try {
            dispatch(s, id, type);
        } catch (const ParseError& e) {
            throw ParseError(e.kind, id, e.path, e.message);
        } catch (const std::invalid_argument& e) {
            throw ParseError(Kind::invariant, id, "", e.what());
        }
        types_[id] = type;
        doc.sections.push_back(canon_);
    }

private:
    std::map<std::string, std::string> types_;
    json canon_;  // the section with every scalar rewritten canonically

    template <class T>
    const T& ref(const std::map<std::string, T>& m, const json& s, const std::string& key, const std::string& type) {
        std::string target = text(field(s, key, ""), "/" + key);
        auto it = m.find(target);
        if (it == m.end()) {
            auto t = types_.find(target);
            if (t != types_.end())
                throw ParseError(Kind::reference, "", "/" + key,
                                 "reference '" + target + "' is a " + t->second + ", expected a " + type);
            throw ParseError(Kind::reference, "", "/" + key, "unresolved reference '" + target + "'");
        }
        return it->second;
    }

    static void require(const Report& r, const std::string& what) {
        if (r.ok()) return;
        std::string msg = what;
        for (const auto& i : r.issues) msg += "; " + i;
        throw ParseError(Kind::invariant, "", "", msg);
    }

    void check_refs(const json& s) {
        static const std::set<std::string> keys{"ring",      "module",  "algebroid", "connection", "superdata",
                                                "metric",    "form",    "subject",   "type0",      "type1"};
        for (const auto& [key, value] : s.items()) {
            bool single = keys.count(key) > 0;
            bool many = key == "forms" || (key.size() > 6 && key.compare(key.size() - 6, 6, "_forms") == 0);
            if (!single && !many) continue;
            std::vector<std::pair<std::string, std::string>> targets;
            if (single) targets.emplace_back(text(value, "/" + key), "/" + key);
            else {
                std::size_t i = 0;
                for (const auto& f : array(value, "/" + key)) {
                    std::string p = "/" + key + "/" + std::to_string(i++);
                    targets.emplace_back(text(f, p), p);
                }
            }
            for (const auto& [target, p] : targets)
                if (!types_.count(target)) throw ParseError(Kind::reference, "", p, "unresolved reference '" + target + "'");
        }
    }

    void dispatch(const json& s, const std::string& id, const std::string& type) {
        if (type == "ring") {
            BaseRing r;
            r.dim = count(field(s, "dim", ""), "/dim");
            r.mult = parse_vec(field(s, "mult", ""), "/mult");
            r.unit = parse_vec(field(s, "unit", ""), "/unit");
            if (r.mult.size() != r.dim * r.dim * r.dim || r.unit.size() != r.dim)
                syntax("/mult", "structure constants do not match dim");
            require(check_ring(r), "invalid ring");
            canon_["mult"] = vec_json(r.mult);
            canon_["unit"] = vec_json(r.unit);
            doc.rings[id] = r;
        } else if (type == "module") {
            RModule m;
            m.ring = ref(doc.rings, s, "ring", "ring");
            m.dim = count(field(s, "dim", ""), "/dim");
            m.action = parse_matrices(field(s, "action", ""), "/action");
            const json& fr = field(s, "free_rank", "");
            if (!fr.is_null()) m.free_rank = count(fr, "/free_rank");
            require(check_module(m), "invalid module");
            canon_["action"] = matrices_json(m.action);
            doc.modules[id] = m;
        } else if (type == "algebroid") {
            Algebroid a;
            a.module = ref(doc.modules, s, "module", "module");
            a.bracket = parse_vec(field(s, "bracket", ""), "/bracket");
            a.anchor = parse_matrices(field(s, "anchor", ""), "/anchor");
            require(check_algebroid(a), "invalid algebroid");
            canon_["bracket"] = vec_json(a.bracket);
            canon_["anchor"] = matrices_json(a.anchor);
            doc.algebroids[id] = a;
        } else if (type == "connection") {
            Connection c{ref(doc.algebroids, s, "algebroid", "algebroid"), ref(doc.modules, s, "coeff", "module"),
                         parse_matrices(field(s, "nabla", ""), "/nabla")};
            require(check_connection(c), "invalid connection");
            canon_["nabla"] = matrices_json(c.nabla);
            doc.connections[id] = c;
        } else if (type == "form") {
            const Algebroid& a = ref(doc.algebroids, s, "algebroid", "algebroid");
            const RModule& w = ref(doc.modules, s, "coeff", "module");
            std::size_t p = count(field(s, "degree", ""), "/degree");
            if (p > a.dim()) syntax("/degree", "degree exceeds the algebroid rank");
            Form f = Form::zero(p, a.dim(), w.dim);
            const json& comp = array(field(s, "components", ""), "/components");
            if (comp.size() != f.comp.size()) syntax("/components", "expected " + std::to_string(f.comp.size()) + " components");
            for (std::size_t i = 0; i < comp.size(); ++i) {
                Vec v = parse_vec(comp[i], "/components/" + std::to_string(i));
                if (v.size() != w.dim) syntax("/components/" + std::to_string(i), "component has the wrong length");
                f.comp[i] = v;
            }
            require(check_form(a, w, f), "invalid form");
            json comp_out = json::array();
            for (const auto& v : f.comp) comp_out.push_back(vec_json(v));
            canon_["components"] = comp_out;
            doc.forms[id] = {text(s["algebroid"], "/algebroid"), text(s["coeff"], "/coeff"), f};
        } else if (type == "superdata") {
            SuperData d;
            d.algebroid = ref(doc.algebroids, s, "algebroid", "algebroid");
            d.side = ref(doc.modules, s, "side", "module");
            d.core = ref(doc.modules, s, "core", "module");
            d.del = parse_matrix_at(field(s, "del", ""), "/del");
            d.nabla_c = parse_matrices(field(s, "nabla_c", ""), "/nabla_c");
            d.nabla_s = parse_matrices(field(s, "nabla_s", ""), "/nabla_s");
            d.omega = parse_hom_form_at(field(s, "omega", ""), d.algebroid.dim(), "/omega");
            require(check_superdata(d), "invalid superdata");
            canon_["del"] = matrix_json(d.del);
            canon_["nabla_c"] = matrices_json(d.nabla_c);
            canon_["nabla_s"] = matrices_json(d.nabla_s);
            canon_["omega"] = hom_form_json(d.omega);
            doc.superdata[id] = d;
        } else if (type == "metric") {
            const SuperData& d = ref(doc.superdata, s, "superdata", "superdata");
            GradedMetric g{parse_matrix_at(field(s, "gram_c", ""), "/gram_c"), parse_matrix_at(field(s, "gram_s", ""), "/gram_s")};
            require(check_metric(d, g), "invalid metric");
            canon_["gram_c"] = matrix_json(g.gram_c);
            canon_["gram_s"] = matrix_json(g.gram_s);
            doc.metrics[id] = {text(s["superdata"], "/superdata"), g};
        } else if (type == "certificate") {
            text(field(s, "kind", ""), "/kind");
            check_refs(s);
            doc.certificates[id] = s;
        } else if (type == "tuple") {
            const SuperData& d = ref(doc.superdata, s, "superdata", "superdata");
            ref(doc.modules, s, "kernel_module", "module");
            ref(doc.modules, s, "quotient_module", "module");
            for (const char* k : {"kernel_rank", "image_rank", "cokernel_rank"}) count(field(s, k, ""), std::string("/") + k);
            canon_["del"] = matrix_json(parse_matrix_at(field(s, "del", ""), "/del"));
            for (const char* k : {"nabla_k", "nabla_v"})
                canon_[k] = matrices_json(parse_matrices(field(s, k, ""), std::string("/") + k));
            for (const char* k : {"kernel", "quotient"}) {
                json vs = json::array();
                std::size_t i = 0;
                for (const auto& v : array(field(s, k, ""), std::string("/") + k))
                    vs.push_back(vec_json(parse_vec(v, std::string("/") + k + "/" + std::to_string(i++))));
                canon_[k] = vs;
            }
            canon_["omega"] = hom_form_json(parse_hom_form_at(field(s, "omega", ""), d.algebroid.dim(), "/omega"));
            doc.tuples[id] = canon_;
        } else {
            syntax("/type", "unknown section type '" + type + "'");
        }
    }
};

}  // namespace

ParseError::ParseError(Kind k, std::string sec, std::string p, const std::string& msg)
    : std::runtime_error(sec.empty() ? msg : "section '" + sec + "' " + p + ": " + msg),
      kind(k),
      section(std::move(sec)),
      path(std::move(p)),
      message(msg) {}

std::string kind_name(ParseError::Kind k) {
    switch (k) {
    case Kind::syntax: return "syntax";
    case Kind::reference: return "unresolved-reference";
    case Kind::invariant: return "invariant";
    }
    return "unknown";
}

std::string scalar_text(const Scalar& s) { return s.get_str(); }

Scalar parse_scalar(const json& j) {
    if (!j.is_string()) throw ParseError(Kind::syntax, "", "", "scalars must be strings of the form \"p/q\"");
    const std::string t = j.get<std::string>();
    std::size_t slash = t.find('/');
    auto digits = [](const std::string& x, bool sign) {
        std::size_t i = sign && !x.empty() && x[0] == '-' ? 1 : 0;
        if (i == x.size()) return false;
        for (; i < x.size(); ++i)
            if (x[i] < '0' || x[i] > '9') return false;
        return true;
    };
    std::string num = t.substr(0, slash), den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false)) throw ParseError(Kind::syntax, "", "", "malformed scalar '" + t + "'");
    mpz_class n(num), d(den);
    if (d == 0) throw ParseError(Kind::syntax, "", "", "zero denominator in '" + t + "'");
    Scalar s(n, d);
    s.canonicalize();
    return s;
}

json matrix_json(const Matrix& m) {
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", vec_json(m.entries())}};
}

Matrix parse_matrix(const json& j) { return parse_matrix_at(j, ""); }

json hom_form_json(const HomForm& f) {
    return {{"degree", f.degree}, {"rows", f.rows}, {"cols", f.cols}, {"components", matrices_json(f.comp)}};
}

HomForm parse_hom_form(const json& j, std::size_t n) { return parse_hom_form_at(j, n, ""); }

std::optional<std::string> Document::last_of(const std::string& type) const {
    for (auto it = sections.rbegin(); it != sections.rend(); ++it)
        if ((*it)["type"] == type) return (*it)["id"].get<std::string>();
    return std::nullopt;
}

Document parse_json(const json& j) {
    if (!j.is_object()) throw ParseError(Kind::syntax, "", "", "document must be an object");
    auto v = j.find("format_version");
    if (v == j.end() || !v->is_string()) throw ParseError(Kind::syntax, "", "/format_version", "missing format_version");
    if (*v != format_version)
        throw ParseError(Kind::syntax, "", "/format_version", "unsupported format_version " + v->get<std::string>());
    auto secs = j.find("sections");
    if (secs == j.end() || !secs->is_array()) throw ParseError(Kind::syntax, "", "/sections", "missing sections array");
    Parser p;
    for (std::size_t i = 0; i < secs->size(); ++i) p.section((*secs)[i], i);
    return std::move(p.doc);
}

Document parse(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(Kind::syntax, "", "", e.what());
    }
    return parse_json(j);
}

json to_json(const Document& d) { return {{"format_version", format_version}, {"sections", d.sections}}; }

std::string emit(const Document& d) { return to_json(d).dump(1) + "\n"; }

std::string DocWriter::add(const std::string& type, json body) {
    std::string id = type + "-" + std::to_string(++counters_[type]);
    body["id"] = id;
    body["type"] = type;
    sections_.push_back(std::move(body));
    return id;
}

template <class T>
std::optional<std::string> DocWriter::find(const std::vector<std::pair<T, std::string>>& seen, const T& x) const {
    for (const auto& [obj, id] : seen)
        if (obj == x) return id;
    return std::nullopt;
}

std::string DocWriter::ring(const BaseRing& r) {
    if (auto id = find(rings_, r)) return *id;
    std::string id = add("ring", {{"dim", r.dim}, {"mult", vec_json(r.mult)}, {"unit", vec_json(r.unit)}});
    rings_.emplace_back(r, id);
    return id;
}

std::string DocWriter::module(const RModule& m) {
    if (auto id = find(modules_, m)) return *id;
    json body{{"ring", ring(m.ring)}, {"dim", m.dim}, {"action", matrices_json(m.action)}};
    body["free_rank"] = m.free_rank ? json(*m.free_rank) : json(nullptr);
    std::string id = add("module", body);
    modules_.emplace_back(m, id);
    return id;
}

std::string DocWriter::algebroid(const Algebroid& a) {
    if (auto id = find(algebroids_, a)) return *id;
    std::string id =
        add("algebroid", {{"module", module(a.module)}, {"bracket", vec_json(a.bracket)}, {"anchor", matrices_json(a.anchor)}});
    algebroids_.emplace_back(a, id);
    return id;
}

std::string DocWriter::connection(const Connection& c) {
    return add("connection",
               {{"algebroid", algebroid(c.algebroid)}, {"coeff", module(c.coeff)}, {"nabla", matrices_json(c.nabla)}});
}

std::string DocWriter::form(const Algebroid& a, const RModule& coeff, const Form& f) {
    json comp = json::array();
    for (const auto& v : f.comp) comp.push_back(vec_json(v));
    return add("form", {{"algebroid", algebroid(a)}, {"coeff", module(coeff)}, {"degree", f.degree}, {"components", comp}});
}

std::string DocWriter::superdata(const SuperData& d) {
    return add("superdata", {{"algebroid", algebroid(d.algebroid)},
                             {"side", module(d.side)},
                             {"core", module(d.core)},
                             {"del", matrix_json(d.del)},
                             {"nabla_c", matrices_json(d.nabla_c)},
                             {"nabla_s", matrices_json(d.nabla_s)},
                             {"omega", hom_form_json(d.omega)}});
}

std::string DocWriter::metric(const std::string& superdata_id, const GradedMetric& g) {
    return add("metric", {{"superdata", superdata_id}, {"gram_c", matrix_json(g.gram_c)}, {"gram_s", matrix_json(g.gram_s)}});
}

std::string DocWriter::certificate(json body) {
    if (!body.contains("kind")) throw std::invalid_argument("certificate without kind");
    return add("certificate", std::move(body));
}

std::string DocWriter::tuple(const std::string& superdata_id, const ClassifyingTuple& t) {
    json kernel = json::array(), quotient = json::array();
    for (const auto& v : t.kernel.basis) kernel.push_back(vec_json(v));
    for (const auto& v : t.quotient.basis) quotient.push_back(vec_json(v));
    return add("tuple", {{"superdata", superdata_id},
                         {"kernel_rank", t.kernel_rank},
                         {"image_rank", t.image_rank},
                         {"cokernel_rank", t.cokernel_rank},
                         {"del", matrix_json(t.del)},
                         {"kernel", kernel},
                         {"quotient", quotient},
                         {"kernel_module", module(t.kernel_module)},
                         {"quotient_module", module(t.quotient_module)},
                         {"nabla_k", matrices_json(t.nabla_k)},
                         {"nabla_v", matrices_json(t.nabla_v)},
                         {"omega", hom_form_json(t.omega)}});
}

Document DocWriter::finish() const {
    return parse_json({{"format_version", format_version}, {"sections", sections_}});
}

}  // namespace vbalg::io
