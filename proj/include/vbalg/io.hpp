#ifndef VBALG_IO_HPP
#define VBALG_IO_HPP

#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "vbalg/chern_simons.hpp"
#include "vbalg/classify.hpp"

namespace vbalg::io {

using json = nlohmann::json;

inline constexpr const char* format_version = "1";

class ParseError : public std::runtime_error {
public:
    enum class Kind { syntax, reference, invariant };

    ParseError(Kind kind, std::string section, std::string path, const std::string& message);

    Kind kind;
    std::string section;  // id of the offending section, empty for document-level problems
    std::string path;     // JSON pointer inside the section
    std::string message;
};

std::string kind_name(ParseError::Kind k);

// Scalars travel as canonical "p/q" (or "p") strings.
std::string scalar_text(const Scalar& s);
Scalar parse_scalar(const json& j);

json matrix_json(const Matrix& m);
Matrix parse_matrix(const json& j);
json hom_form_json(const HomForm& f);
HomForm parse_hom_form(const json& j, std::size_t n);

struct FormEntry {
    std::string algebroid;
    std::string coeff;
    Form form;
};

struct MetricEntry {
    std::string superdata;
    GradedMetric metric;
};

/* A parsed document: sections in file order plus the resolved objects.
   Certificates and tuples stay as JSON; their references are checked. */
struct Document {
    json sections = json::array();
    std::map<std::string, BaseRing> rings;
    std::map<std::string, RModule> modules;
    std::map<std::string, Algebroid> algebroids;
    std::map<std::string, Connection> connections;
    std::map<std::string, FormEntry> forms;
    std::map<std::string, SuperData> superdata;
    std::map<std::string, MetricEntry> metrics;
    std::map<std::string, json> certificates;
    std::map<std::string, json> tuples;

    // Id of the last section of the given type, if any.
    std::optional<std::string> last_of(const std::string& type) const;
    friend bool operator==(const Document& a, const Document& b) { return a.sections == b.sections; }
};

Document parse(const std::string& text);
Document parse_json(const json& j);
std::string emit(const Document& d);
json to_json(const Document& d);

/* Builds documents; structurally equal rings, modules and algebroids are
   written once and shared by id. */
class DocWriter {
public:
    std::string ring(const BaseRing& r);
    std::string module(const RModule& m);
    std::string algebroid(const Algebroid& a);
    std::string connection(const Connection& c);
    std::string form(const Algebroid& a, const RModule& coeff, const Form& f);
    std::string superdata(const SuperData& d);
    std::string metric(const std::string& superdata_id, const GradedMetric& g);
    // body must carry "kind"; "id" and "type" are filled in.
    std::string certificate(json body);
    std::string tuple(const std::string& superdata_id, const ClassifyingTuple& t);

    // Validates by re-parsing.
    Document finish() const;
    json sections() const { return sections_; }

private:
    std::string add(const std::string& type, json body);
    template <class T>
    std::optional<std::string> find(const std::vector<std::pair<T, std::string>>& seen, const T& x) const;

    json sections_ = json::array();
    std::map<std::string, int> counters_;
    std::vector<std::pair<BaseRing, std::string>> rings_;
    std::vector<std::pair<RModule, std::string>> modules_;
    std::vector<std::pair<Algebroid, std::string>> algebroids_;
};

}  // namespace vbalg::io

#endif
