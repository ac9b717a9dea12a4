#include "cohcheck/cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cohcheck/checker.h"
#include "cohcheck/corpus.h"
#include "cohcheck/glob.h"
#include "cohcheck/mltt.h"
#include "cohcheck/parser.h"

namespace cohcheck {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void referenced_names(const SrcTm& t, std::set<std::string>& out) {
    if (t.applied) out.insert(t.head);
    for (const auto& a : t.args) referenced_names(a, out);
}

void referenced_names(const SrcTy& t, std::set<std::string>& out) {
    if (t.star) return;
    if (t.base) referenced_names(*t.base, out);
    referenced_names(*t.lhs, out);
    referenced_names(*t.rhs, out);
}

}  // namespace

std::vector<std::size_t> dependency_order(const std::vector<std::string>& texts) {
    std::size_t n = texts.size();
    std::map<std::string, std::size_t> defined_in;
    std::vector<std::set<std::string>> uses(n);
    for (std::size_t i = 0; i < n; ++i) {
        Program p;
        try {
            p = parse_program(texts[i]);
        } catch (const Error&) {
            continue;
        }
        for (const auto& d : p.decls) {
            defined_in.emplace(d.name, i);
            for (const auto& b : d.tele) referenced_names(b.ty, uses[i]);
            referenced_names(d.ty, uses[i]);
            if (d.body) referenced_names(*d.body, uses[i]);
        }
    }
    std::vector<std::set<std::size_t>> deps(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& name : uses[i]) {
            auto it = defined_in.find(name);
            if (it != defined_in.end() && it->second != i) deps[i].insert(it->second);
        }
    }
    std::vector<std::size_t> order;
    std::vector<bool> placed(n, false);
    while (order.size() < n) {
        std::size_t pick = n;
        for (std::size_t i = 0; i < n && pick == n; ++i) {
            if (placed[i]) continue;
            bool ready = std::all_of(deps[i].begin(), deps[i].end(), [&](std::size_t d) { return placed[d]; });
            if (ready) pick = i;
        }
        if (pick == n) {  // cycle: take the first remaining file
            pick = static_cast<std::size_t>(std::find(placed.begin(), placed.end(), false) - placed.begin());
        }
        placed[pick] = true;
        order.push_back(pick);
    }
    return order;
}

namespace {

struct Source {
    std::string path;
    std::string text;
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + p.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Source> load_sources(const std::vector<std::string>& paths) {
    std::vector<Source> out;
    if (paths.empty()) {
        for (const auto& f : embedded_corpus()) out.push_back({"corpus/" + std::string(f.name), std::string(f.text)});
        return out;
    }
    for (const auto& path : paths) {
        std::error_code ec;
        if (fs::is_directory(path, ec)) {
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(path)) {
                if (entry.is_regular_file() && entry.path().extension() == ".coh") files.push_back(entry.path());
            }
            std::sort(files.begin(), files.end());
            std::vector<std::string> texts;
            for (const auto& f : files) texts.push_back(read_file(f));
            for (std::size_t i : dependency_order(texts)) out.push_back({files[i].generic_string(), texts[i]});
        } else if (fs::is_regular_file(path, ec)) {
            out.push_back({path, read_file(path)});
        } else {
            throw UsageError("no such file or directory: '" + path + "'");
        }
    }
    return out;
}

struct Row {
    CheckReport report;
    DeclPtr decl;
    bool parse_error = false;
};

struct Session {
    std::vector<Row> rows;
    SymbolTable table;
    bool parse_failed = false;
    bool check_failed = false;
};

Session check_sources(const std::vector<Source>& sources, const CliConfig& config) {
    Session s;
    Kernel kernel;
    for (const auto& src : sources) {
        Program p;
        try {
            p = parse_program(src.text, src.path);
        } catch (const ParseError& e) {
            Row row;
            row.report.decl = src.path;
            row.report.diagnostics.push_back(e.diagnostic());
            row.report.span = *e.span();
            row.parse_error = true;
            s.rows.push_back(std::move(row));
            s.parse_failed = true;
            if (config.fail_fast) return s;
            continue;
        }
        for (const auto& d : p.decls) {
            DeclResult r = check_declaration(s.table, d, kernel);
            if (r.checked) s.table = s.table.with(r.checked);
            bool failed = !r.report.ok;
            s.rows.push_back({std::move(r.report), r.checked, false});
            if (failed) {
                s.check_failed = true;
                if (config.fail_fast) return s;
            }
        }
    }
    return s;
}

Json span_json(const SourceSpan& span) {
    return Json{{"file", span.file},
                {"start", {{"line", span.start.line}, {"column", span.start.column}}},
                {"end", {{"line", span.end.line}, {"column", span.end.column}}}};
}

Json report_json(const CheckReport& r) {
    Json diags = Json::array();
    for (const auto& d : r.diagnostics)
        diags.push_back(Json{{"code", d.code}, {"message", d.message}, {"span", span_json(d.span)}});
    return Json{{"decl", r.decl},
                {"status", r.ok ? "ok" : "error"},
                {"dim", r.dim},
                {"depth", r.depth},
                {"diagnostics", diags}};
}

class Style {
public:
    explicit Style(bool color) : color_(color) {}
    std::string ok(const std::string& s) const { return wrap("32", s); }
    std::string bad(const std::string& s) const { return wrap("31", s); }

private:
    std::string wrap(const char* code, const std::string& s) const {
        return color_ ? "\x1b[" + std::string(code) + "m" + s + "\x1b[0m" : s;
    }
    bool color_;
};

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

void print_diagnostics(const CheckReport& r, std::ostream& err) {
    for (const auto& d : r.diagnostics) err << to_string(d.span) << ": " << d.code << ": " << d.message << "\n";
}

bool selected(const CliConfig& config, const Row& row) {
    return !config.decl || row.parse_error || row.report.decl == *config.decl;
}


std::size_t name_width(const Session& s, const CliConfig& config) {
    std::size_t w = 4;
    for (const auto& row : s.rows)
        if (selected(config, row) && !row.parse_error) w = std::max(w, row.report.decl.size());
    return w;
}

// One line per declaration on `out`; diagnostics on `err`.
void print_status(const Row& row, std::size_t width, const Style& st, std::ostream& out, std::ostream& err) {
    if (row.parse_error) {
        out << st.bad("error") << "  " << row.report.decl << "  (parse error)\n";
    } else if (row.report.ok) {
        out << st.ok("ok") << "     " << pad(row.report.decl, width) << "  dim=" << row.report.dim
            << " depth=" << row.report.depth << "\n";
    } else {
        out << st.bad("error") << "  " << row.report.decl << "\n";
    }
    print_diagnostics(row.report, err);
}

int cmd_check(const CliConfig& config, const Session& s, std::ostream& out, std::ostream& err) {
    Style st(config.color);
    if (config.json) {
        Json arr = Json::array();
        for (const auto& row : s.rows)
            if (selected(config, row)) arr.push_back(report_json(row.report));
        out << arr.dump(2) << "\n";
        return exit_code::ok;
    }
    std::size_t w = name_width(s, config);
    for (const auto& row : s.rows)
        if (selected(config, row)) print_status(row, w, st, out, err);
    return exit_code::ok;
}

int cmd_elaborate(const CliConfig& config, const Session& s, std::ostream& out, std::ostream& err) {
    Style st(config.color);
    Json arr = Json::array();
    std::size_t w = name_width(s, config);
    for (const auto& row : s.rows) {
        if (!selected(config, row)) continue;
        if (!row.decl) {
            if (config.json)
                arr.push_back(report_json(row.report));
            else
                print_status(row, w, st, out, err);
            continue;
        }
        const CheckedDecl& d = *row.decl;
        mltt::MEnv vars;
        for (const auto& e : d.ctx->entries()) vars.push_back(mltt::MTm::var(e.name));
        std::string generic = mltt::to_string(mltt::normalize(mltt::elaborate_tm(*d.ctx, d.generic_term(), vars)));
        std::string type = mltt::to_string(mltt::normalize(mltt::elaborate_ty(*d.ctx, d.ty, vars)));
        std::string term_nf, type_nf;
        if (d.kind == DeclKind::Coh) {
            mltt::MEnv id = mltt::diag(*d.ctx, "a");
            term_nf = mltt::to_string(mltt::normalize(mltt::MTm::coh_ref(d.ctx, d.ty, id, d.name)));
            type_nf = mltt::to_string(mltt::normalize(mltt::elaborate_ty(*d.ctx, d.ty, id)));
        }
        if (config.json) {
            Json j = report_json(row.report);
            j["kind"] = d.kind == DeclKind::Coh ? "coh" : "def";
            j["type"] = type;
            j["term"] = generic;
            if (d.kind == DeclKind::Coh) j["diagonal"] = Json{{"term", term_nf}, {"type", type_nf}};
            arr.push_back(j);
            continue;
        }
        print_status(row, w, st, out, err);
        out << "  type      " << type << "\n";
        out << "  term      " << generic << "\n";
        if (d.kind == DeclKind::Coh) out << "  diagonal  " << term_nf << " : " << type_nf << "\n";
    }
    if (config.json) out << arr.dump(2) << "\n";
    return exit_code::ok;
}

int cmd_meta(const CliConfig& config, const Session& s, std::ostream& out, std::ostream& err) {
    Style st(config.color);
    Json arr = Json::array();
    bool failed = false;
    std::size_t w = name_width(s, config);
    if (!config.json) {
        out << pad("decl", w) << "  dim  " << pad("normal form", 12) << "  " << pad("type", 12) << "  checks  status\n";
    }
    for (const auto& row : s.rows) {
        if (!selected(config, row)) continue;
        if (!row.decl) {
            if (config.json) {
                arr.push_back(report_json(row.report));
            } else {
                out << pad(row.report.decl, w) << "  -    " << pad("-", 12) << "  " << pad("-", 12) << "  -       "
                    << st.bad("error") << "\n";
                print_diagnostics(row.report, err);
            }
            continue;
        }
        if (row.decl->kind != DeclKind::Coh) continue;
        mltt::LemmaReport rep = mltt::check_diagonal_lemmas(*row.decl);
        failed = failed || !rep.ok();
        if (config.json) {
            Json fails = Json::array();
            for (const auto& f : rep.failures)
                fails.push_back(Json{{"lemma", f.lemma}, {"subject", f.subject}, {"expected", f.expected},
                                     {"actual", f.actual}});
            arr.push_back(Json{{"decl", row.report.decl},
                               {"status", rep.ok() ? "ok" : "error"},
                               {"dim", rep.dim},
                               {"normal_form", rep.term_nf},
                               {"type_normal_form", rep.type_nf},
                               {"checks", rep.checks},
                               {"failures", fails}});
            continue;
        }
        out << pad(row.report.decl, w) << "  " << pad(std::to_string(rep.dim), 3) << "  " << pad(rep.term_nf, 12)
            << "  " << pad(rep.type_nf, 12) << "  " << pad(std::to_string(rep.checks), 6) << "  "
            << (rep.ok() ? st.ok("ok") : st.bad("error")) << "\n";
        for (const auto& f : rep.failures) {
            err << row.report.decl << ": " << codes::LemmaFailure << ": " << f.lemma << " equation fails for "
                << f.subject << ": expected " << f.expected << ", got " << f.actual << "\n";
        }
    }
    if (config.json) out << arr.dump(2) << "\n";
    return failed ? exit_code::error : exit_code::ok;
}

int cmd_interp(const CliConfig& config, const Session& s, std::ostream& out, std::ostream& err) {
    std::unique_ptr<glob::GlobModel> model;
    try {
        model = glob::make_model(*config.model);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const Error& e) {
        throw UsageError(e.code() + ": " + e.what());
    }
    std::vector<DeclPtr> decls;
    for (const auto& row : s.rows) {
        if (!selected(config, row)) continue;
        if (row.decl)
            decls.push_back(row.decl);
        else
            print_diagnostics(row.report, err);
    }
    glob::SemanticReport rep;
    try {
        rep = glob::check_semantic_lemmas(*model, decls);
    } catch (const Error& e) {
        err << e.code() << ": " << e.what() << "\n";
        return exit_code::error;
    }
    if (config.json) {
        Json fails = Json::array();
        for (const auto& f : rep.failures)
            fails.push_back(Json{{"lemma", f.lemma}, {"decl", f.decl}, {"env", f.env}, {"detail", f.detail}});
        Json j{{"model", rep.model},
               {"status", rep.ok() ? "ok" : "error"},
               {"contexts", rep.contexts},
               {"environments", rep.env_checks},
               {"equations", rep.equations},
               {"singleton_checks", rep.singleton_checks},
               {"globular", rep.globular},
               {"failures", fails}};
        out << j.dump(2) << "\n";
    } else {
        Style st(config.color);
        out << "model        " << rep.model << "\n"
            << "contexts     " << rep.contexts << "\n"
            << "environments " << rep.env_checks << "\n"
            << "equations    " << rep.equations << "\n"
            << "singletons   " << rep.singleton_checks << "\n"
            << "globular     " << (rep.globular ? "yes" : "no") << "\n"
            << "status       " << (rep.ok() ? st.ok("ok") : st.bad("error")) << "\n";
        for (const auto& f : rep.failures)
            err << f.decl << ": " << codes::LemmaFailure << ": " << f.lemma << " fails at " << f.env << ": " << f.detail
                << "\n";
    }
    return rep.ok() ? exit_code::ok : exit_code::error;
}

int cmd_dump(const CliConfig& config, std::ostream& out) {
    if (config.paths.size() != 1) throw UsageError("dump-corpus takes exactly one output directory");
    fs::path dir = config.paths.front();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create '" + dir.string() + "': " + ec.message());
    for (const auto& f : embedded_corpus()) {
        fs::path p = dir / std::string(f.name);
        std::ofstream o(p, std::ios::binary);
        o << f.text;
        if (!o) throw UsageError("cannot write '" + p.string() + "'");
        out << "wrote " << p.generic_string() << "\n";
    }
    return exit_code::ok;
}

}  // namespace

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.model && config.command != Command::Interp) throw UsageError("--model is only valid with interp");
        if (config.command == Command::Interp && !config.model) throw UsageError("interp needs --model");
        if (config.command == Command::DumpCorpus) return cmd_dump(config, out);

        Session s = check_sources(load_sources(config.paths), config);
        if (config.decl) {
            bool found = std::any_of(s.rows.begin(), s.rows.end(),
                                     [&](const Row& r) { return !r.parse_error && r.report.decl == *config.decl; });
            if (!found && !s.parse_failed) throw UsageError("no declaration named '" + *config.decl + "'");
        }
        int code = exit_code::ok;
        switch (config.command) {
        case Command::Check: code = cmd_check(config, s, out, err); break;
        case Command::Elaborate: code = cmd_elaborate(config, s, out, err); break;
        case Command::Meta: code = cmd_meta(config, s, out, err); break;
        case Command::Interp: code = cmd_interp(config, s, out, err); break;
        case Command::DumpCorpus: break;
        }
        if (s.parse_failed) return exit_code::parse;
        if (s.check_failed) return exit_code::error;
        return code;
    } catch (const UsageError& e) {
        err << "cohcheck: " << e.what() << "\n";
        return exit_code::usage;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Type checker for coherence declarations of weak omega-groupoids", "cohcheck"};
    app.require_subcommand(1);
    CliConfig config;
    std::string model;

    struct Sub {
        const char* name;
        Command command;
        const char* help;
    };
    const Sub subs[] = {
        {"check", Command::Check, "Parse and typecheck .coh files"},
        {"elaborate", Command::Elaborate, "Typecheck, then print the translation into type theory with J"},
        {"meta", Command::Meta, "Check that every coherence evaluates to an iterated identity on the diagonal"},
        {"interp", Command::Interp, "Check the semantic lemmas in a finite strict model"},
        {"dump-corpus", Command::DumpCorpus, "Write the embedded corpus to a directory"},
    };
    for (const auto& sub : subs) {
        CLI::App* c = app.add_subcommand(sub.name, sub.help);
        Command cmd = sub.command;
        c->callback([&config, cmd] { config.command = cmd; });
        if (cmd == Command::DumpCorpus) {
            c->add_option("dir", config.paths, "Output directory")->required();
            continue;
        }
        c->add_option("paths", config.paths, ".coh files or directories (default: the embedded corpus)");
        c->add_flag("--json", config.json, "Machine-readable output");
        c->add_flag("--fail-fast", config.fail_fast, "Stop at the first error");
        c->add_option("--decl", config.decl, "Only report this declaration");
        if (cmd == Command::Interp)
            c->add_option("--model", model, "discrete:N or codiscrete:N, 1 <= N <= 9")->required();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }
    if (!model.empty()) config.model = model;
    const char* color = std::getenv("COHCHECK_COLOR");
    config.color = color && std::string(color) == "1";
    return run(config, out, err);
}

}  // namespace cohcheck
