#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vbalg/cli.hpp"
#include "vbalg/io.hpp"
#include "vbalg/models.hpp"

namespace py = pybind11;

namespace {

py::tuple run(const std::vector<std::string>& args, const std::string& stdin_text) {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code;
    {
        py::gil_scoped_release release;
        code = vbalg::cli::run(args, in, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
}

std::string example(const std::string& name, std::uint64_t seed, std::vector<std::size_t> dims) {
    if (dims.size() != 3) throw py::value_error("dims takes three values");
    vbalg::io::DocWriter w;
    w.superdata(vbalg::named_example(name, seed, {dims[0], dims[1], dims[2]}));
    return vbalg::io::emit(w.finish());
}

}  // namespace

PYBIND11_MODULE(_vbalg, m) {
    m.doc() = "Exact VB-algebroid computations; documents are JSON strings in the interchange format.";
    m.def("run", &run, py::arg("args"), py::arg("stdin") = "",
          "Run one CLI command line; returns (exit_code, stdout, stderr).");
    m.def("example", &example, py::arg("name"), py::arg("seed") = 1, py::arg("dims") = std::vector<std::size_t>{2, 2, 2},
          "Interchange document holding one named example.");
    m.def("example_names", &vbalg::example_names);
    m.def("format_version", [] { return std::string(vbalg::io::format_version); });
}
