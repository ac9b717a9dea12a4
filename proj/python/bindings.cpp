#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cohcheck/checker.h"
#include "cohcheck/cli.h"
#include "cohcheck/corpus.h"
#include "cohcheck/glob.h"
#include "cohcheck/mltt.h"
#include "cohcheck/parser.h"

namespace py = pybind11;
using namespace cohcheck;

namespace {

py::dict span_dict(const SourceSpan& s) {
    py::dict d;
    d["file"] = s.file;
    d["start"] = py::dict(py::arg("line") = s.start.line, py::arg("column") = s.start.column);
    d["end"] = py::dict(py::arg("line") = s.end.line, py::arg("column") = s.end.column);
    return d;
}

py::dict report_dict(const CheckReport& r) {
    py::list diags;
    for (const auto& d : r.diagnostics) {
        py::dict x;
        x["code"] = d.code;
        x["message"] = d.message;
        x["span"] = span_dict(d.span);
        diags.append(x);
    }
    py::dict out;
    out["decl"] = r.decl;
    out["status"] = r.ok ? "ok" : "error";
    out["dim"] = r.dim;
    out["depth"] = r.depth;
    out["diagnostics"] = diags;
    return out;
}

const SymbolTable& corpus_table() {
    static const SymbolTable table = [] {
        SymbolTable t;
        for (const auto& f : embedded_corpus()) t = check_program(parse_program(f.text, std::string(f.name)), t).table;
        return t;
    }();
    return table;
}

DeclPtr corpus_decl(const std::string& name) {
    DeclPtr d = corpus_table().find(name);
    if (!d) throw py::key_error("no corpus declaration named '" + name + "'");
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Type checker for coherence declarations of weak omega-groupoids";

    static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            std::string where = to_string(*e.span());
            py::set_error(parse_error, (where + ": " + e.code() + ": " + e.what()).c_str());
        }
    });

    m.def(
        "check",
        [](const std::string& text, const std::string& file, bool with_corpus, bool fail_fast) {
            Program p = parse_program(text, file);
            CheckOptions opts;
            opts.fail_fast = fail_fast;
            ProgramResult r = check_program(p, with_corpus ? corpus_table() : SymbolTable{}, opts);
            py::list out;
            for (const auto& rep : r.reports) out.append(report_dict(rep));
            return out;
        },
        py::arg("text"), py::arg("file") = "", py::arg("with_corpus") = false, py::arg("fail_fast") = false,
        "Parses and checks a program; returns one report per declaration.");

    m.def(
        "format", [](const std::string& text) { return print_program(parse_program(text)); }, py::arg("text"),
        "Parses a program and prints it back in canonical layout.");

    m.def("corpus", [] {
        py::dict out;
        for (const auto& f : embedded_corpus()) out[py::str(std::string(f.name))] = std::string(f.text);
        return out;
    });

    m.def(
        "meta",
        [](const std::string& name) {
            mltt::LemmaReport r = mltt::check_diagonal_lemmas(*corpus_decl(name));
            py::dict out;
            out["decl"] = name;
            out["status"] = r.ok() ? "ok" : "error";
            out["dim"] = r.dim;
            out["normal_form"] = r.term_nf;
            out["type_normal_form"] = r.type_nf;
            out["checks"] = r.checks;
            out["failures"] = r.failures.size();
            return out;
        },
        py::arg("name"), "Checks the diagonal lemmas for a corpus coherence.");

    m.def(
        "interp",
        [](const std::string& model) {
            auto g = glob::make_model(model);
            glob::SemanticReport r = glob::check_semantic_lemmas(*g, corpus_table().decls());
            py::dict out;
            out["model"] = r.model;
            out["status"] = r.ok() ? "ok" : "error";
            out["environments"] = r.env_checks;
            out["equations"] = r.equations;
            out["singleton_checks"] = r.singleton_checks;
            out["globular"] = r.globular;
            out["failures"] = r.failures.size();
            return out;
        },
        py::arg("model"), "Checks the semantic lemmas for the corpus in a finite model.");

    m.def(
        "run",
        [](const std::vector<std::string>& args) {
            std::vector<const char*> argv{"cohcheck"};
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line interface; returns (exit code, stdout, stderr).");
}
