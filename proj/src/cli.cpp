#include "triqal/cli.hpp"

#include "triqal/families.hpp"
#include "triqal/frobenius.hpp"
#include "triqal/io.hpp"
#include "triqal/lawrence.hpp"
#include "triqal/lens.hpp"
#include "triqal/pentagon.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace triqal {

using nlohmann::json;

namespace {

const std::vector<std::string> kDefaultChecks = {"i",    "ii",       "iii",      "iv",    "v",        "vi",
                                                 "vii",  "compat",   "form",     "pentagon", "pachner14",
                                                 "cubic", "projector"};

const std::vector<std::string> kKnownChecks = {"i",       "ii",       "iii",       "iv",    "v",
                                               "vi",      "vii",      "compat",    "form",  "pentagon",
                                               "pentagon-coord", "pachner14", "cubic", "projector"};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double resolve_tolerance(const std::optional<double>& flag) {
    if (flag) {
        if (!(*flag >= 0.0)) throw InputError("--tol must be non-negative");
        return *flag;
    }
    if (const char* env = std::getenv("TRIQAL_TOL")) {
        const std::string_view s = env;
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc{} || ptr != s.data() + s.size() || !(value >= 0.0)) {
            throw InputError("TRIQAL_TOL is not a non-negative number: '" + std::string(s) + "'");
        }
        return value;
    }
    return kDefaultTolerance;
}

/// Report shared by every subcommand; fields are emitted in insertion order.
struct Report {
    std::string command;
    std::vector<std::string> notes;
    ResidualReport residuals;
    json extra = json::object();

    int exit_code() const { return residuals.all_pass() ? kExitPass : kExitCheckFailed; }

    json to_json() const {
        json checks = json::array();
        for (const Residual& r : residuals.items) {
            json item = {{"name", r.check}, {"residual", r.value}, {"pass", residuals.passes(r)}};
            if (!r.note.empty()) item["note"] = r.note;
            checks.push_back(std::move(item));
        }
        json j = json::object();
        j["command"] = command;
        j["tolerance"] = residuals.tolerance;
        j["notes"] = notes;
        j["checks"] = checks;
        for (const auto& [key, value] : extra.items()) j[key] = value;
        j["pass"] = residuals.all_pass();
        return j;
    }

    void print(std::ostream& os) const {
        os << command << "  (tolerance " << residuals.tolerance << ")\n";
        for (const auto& note : notes) os << "  note: " << note << '\n';
        std::size_t width = 4;
        for (const Residual& r : residuals.items) width = std::max(width, r.check.size());
        const auto flags = os.flags();
        for (const Residual& r : residuals.items) {
            os << "  " << std::left << std::setw(static_cast<int>(width)) << r.check << "  " << std::right
               << std::scientific << std::setprecision(3) << r.value << "  "
               << (residuals.passes(r) ? "pass" : "FAIL");
            if (!r.note.empty()) os << "  (" << r.note << ')';
            os << '\n';
        }
        os.flags(flags);
        os << "result: " << (residuals.all_pass() ? "pass" : "FAIL") << '\n';
    }
};

std::string echo(const std::vector<std::string>& args) {
    std::string s = "triqal";
    for (const auto& a : args) s += " " + a;
    return s;
}

std::string format_scalar(Scalar z) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ")
       << std::abs(z.imag()) << " i";
    return os.str();
}

/// h from --h, else from the algebra file, else the identity (with a note).
BilinearForm resolve_form(const std::string& h_path, const AlgebraFile& file, std::vector<std::string>& notes) {
    if (!h_path.empty()) return BilinearForm(load_form(h_path, file.n()));
    if (file.h) return BilinearForm(*file.h);
    notes.emplace_back("h defaulted to identity");
    return BilinearForm::identity(file.n());
}

struct CheckOptions {
    std::string file;
    std::string axioms;
    std::string h;
    std::optional<double> tol;
    bool json = false;
};

int cmd_check(const CheckOptions& o, const std::string& command, std::ostream& out) {
    std::vector<std::string> names;
    if (o.axioms.empty()) {
        names = kDefaultChecks;
    } else {
        std::stringstream ss(o.axioms);
        for (std::string item; std::getline(ss, item, ',');) {
            item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
            if (item.empty()) continue;
            if (std::find(kKnownChecks.begin(), kKnownChecks.end(), item) == kKnownChecks.end()) {
                throw InputError("--axioms: unknown check '" + item + "'");
            }
            names.push_back(item);
        }
        if (names.empty()) throw InputError("--axioms: empty list");
    }

    const double tol = resolve_tolerance(o.tol);
    const AlgebraFile file = load_algebra(o.file);
    Report report{command, {}, {}, json::object()};
    report.residuals.tolerance = tol;
    const BilinearForm form = resolve_form(o.h, file, report.notes);
    if (form.dim() != file.n()) throw ParseError("h", "dimension does not match n");

    DenseTensor qm = file.Qm ? *file.Qm : derive_m(file.Qbar, form);
    if (!file.Qm) report.notes.emplace_back("Qm derived from Qbar through h");
    const ThreeAlgebra alg(file.P, file.Qbar, qm);

    for (const std::string& name : names) {
        if (auto id = parse_axiom(name)) {
            report.residuals.add(name, axiom_residual(alg, *id));
        } else if (name == "compat") {
            report.residuals.add(name, compatibility_residual(alg, form), file.Qm ? "" : "Qm derived: holds by construction");
        } else if (name == "form") {
            report.residuals.add(name, form_condition_residual(form, file.P));
        } else if (name == "pentagon") {
            report.residuals.add(name, pentagon_residual(file.Qbar));
        } else if (name == "pentagon-coord") {
            report.residuals.add(name, pentagon_coordinate_residual(file.Qbar));
        } else if (name == "pachner14") {
            report.residuals.add(name, pachner14_residual(file.Qbar));
        } else if (name == "cubic") {
            report.residuals.add(name, cubic_residual(file.Qbar));
        } else if (name == "projector") {
            report.residuals.add(name, projector_residual(projector_matrix(file.Qbar)));
        }
    }
    if (o.json) {
        out << report.to_json().dump(1) << '\n';
    } else {
        report.print(out);
    }
    return report.exit_code();
}

struct FamilyOptions {
    std::string d;
    std::string alpha;
    std::string sign = "+";
    int branch = 1;
    bool trivial = false;
    std::string out;
    std::optional<double> tol;
};

int cmd_family(const FamilyOptions& o, const std::string& command, std::ostream& out, std::ostream& err) {
    const double tol = resolve_tolerance(o.tol);
    SixVars v;
    Report report{command, {}, {}, json::object()};
    report.residuals.tolerance = tol;
    if (o.trivial) {
        v = trivial_solution();
        report.notes.emplace_back("trivial solution");
    } else {
        if (o.d.empty()) throw InputError("--d is required unless --trivial is given");
        if (o.alpha.empty()) throw InputError("--alpha is required unless --trivial is given");
        int sign = 0;
        if (o.sign == "+" || o.sign == "1" || o.sign == "+1") sign = 1;
        if (o.sign == "-" || o.sign == "-1") sign = -1;
        if (sign == 0) throw InputError("--sign must be + or -");
        v = family({parse_complex(o.d), parse_complex(o.alpha), sign, o.branch});
    }
    const auto sys = system23_residuals(v);
    report.residuals.add("polynomial system (max of 12)", *std::max_element(sys.begin(), sys.end()));
    report.residuals.add("reduced quadratic", eq22_residual(v));

    const AlgebraFile file{BasisPermutation::identity(2), embed(v), std::nullopt, std::nullopt};
    if (o.out.empty()) {
        out << to_json(file).dump(1) << '\n';
        report.print(err);
    } else {
        save_algebra(o.out, file);
        report.notes.emplace_back("wrote " + o.out);
        report.print(out);
    }
    return report.exit_code();
}

struct FullOptions {
    std::string file;
    std::string h;
    std::string out;
    std::optional<double> tol;
};

int cmd_full(const FullOptions& o, const std::string& command, std::ostream& out, std::ostream& err) {
    const double tol = resolve_tolerance(o.tol);
    const AlgebraFile file = load_algebra(o.file);
    Report report{command, {}, {}, json::object()};
    const BilinearForm form = resolve_form(o.h, file, report.notes);
    if (form.dim() != file.n()) throw ParseError("h", "dimension does not match n");
    const FrobeniusAlgebra fa{ThreeAlgebra(file.P, file.Qbar), form};
    const FullThreeAlgebra full = build_full(fa);
    report.residuals = full_consistency_report(full, form, tol);

    const json j = full_to_json(full, file.P, form);
    if (o.out.empty()) {
        out << j.dump(1) << '\n';
        report.print(err);
    } else {
        write_json(o.out, j);
        report.notes.emplace_back("wrote " + o.out);
        report.print(out);
    }
    return report.exit_code();
}

struct PentagonOptions {
    std::string file;
    std::optional<double> tol;
    bool json = false;
};

int cmd_pentagon(const PentagonOptions& o, const std::string& command, std::ostream& out) {
    const double tol = resolve_tolerance(o.tol);
    const AlgebraFile file = load_algebra(o.file);
    Report report{command, {}, {}, json::object()};
    report.residuals.tolerance = tol;
    report.residuals.add("pentagon", pentagon_residual(file.Qbar), "operator form");
    report.residuals.add("pentagon-coord", pentagon_coordinate_residual(file.Qbar), "coordinate form");
    report.residuals.add("pachner14", pachner14_residual(file.Qbar));
    report.residuals.add("cubic", cubic_residual(file.Qbar));
    const ProjectorMatrix pm = projector_matrix(file.Qbar);
    report.residuals.add("projector", projector_residual(pm), "B = B^2");
    report.extra["B"] = tensor_to_json(pm.B);
    if (o.json) {
        out << report.to_json().dump(1) << '\n';
        return report.exit_code();
    }
    report.print(out);
    out << "B =\n";
    for (int j = 0; j < pm.B.dim(); ++j) {
        out << " ";
        for (int k = 0; k < pm.B.dim(); ++k) out << "  " << format_scalar(pm.B.at({j, k}));
        out << '\n';
    }
    return report.exit_code();
}

struct LensOptions {
    std::string file;
    int p = 0;
    int q = 0;
    std::string h;
    std::string dump;
};

int cmd_lens(const LensOptions& o, std::ostream& out) {
    const ContractionNetwork net = build_lens(o.p, o.q);
    if (!o.dump.empty()) write_json(o.dump, network_to_json(net));
    const AlgebraFile file = load_algebra(o.file);
    std::vector<std::string> notes;
    const BilinearForm form = resolve_form(o.h, file, notes);
    if (form.dim() != file.n()) throw ParseError("h", "dimension does not match n");
    const bool mediated = std::any_of(net.bonds.begin(), net.bonds.end(),
                                      [](const Bond& b) { return b.mediator != Mediator::direct; });
    if (mediated) notes.emplace_back("same-sign glued faces contracted through h / h_inv (extension beyond q = 1)");
    const Scalar value = evaluate(net, file.Qbar, form);
    out << "L(" << o.p << "," << o.q << ") = " << format_scalar(value) << '\n';
    for (const auto& note : notes) out << "note: " << note << '\n';
    return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lawrence 3-algebra checks, families, full algebras and lens invariants", "triqal"};
    app.set_help_flag("--help", "print help");  // -h would collide with --h
    app.require_subcommand(1);

    CheckOptions check;
    auto* c = app.add_subcommand("check", "residuals of axioms and identities for an algebra file");
    c->add_option("file", check.file, "algebra JSON")->required();
    c->add_option("--axioms", check.axioms,
                  "comma list of i..vii, compat, form, pentagon, pentagon-coord, pachner14, cubic, projector");
    c->add_option("--h", check.h, "bilinear form JSON (default: file's h, else identity)");
    c->add_option("--tol", check.tol, "tolerance (default: TRIQAL_TOL or 1e-9)");
    c->add_flag("--json", check.json, "emit the report as JSON");

    FamilyOptions fam;
    auto* f = app.add_subcommand("family", "write a member of the n = 2 solution families");
    f->add_option("--d", fam.d, "nonzero complex, e.g. 0.25 or 1+1i");
    f->add_option("--alpha", fam.alpha, "nonzero complex");
    f->add_option("--sign", fam.sign, "+ or -")->capture_default_str();
    f->add_option("--branch", fam.branch, "1 or 2")->capture_default_str();
    f->add_flag("--trivial", fam.trivial, "the identity solution");
    f->add_option("--out", fam.out, "output file (default: stdout)");
    f->add_option("--tol", fam.tol, "tolerance");

    FullOptions full;
    auto* u = app.add_subcommand("full", "build all five operations through h");
    u->add_option("file", full.file, "algebra JSON")->required();
    u->add_option("--h", full.h, "bilinear form JSON");
    u->add_option("--out", full.out, "output file (default: stdout)");
    u->add_option("--tol", full.tol, "tolerance");

    PentagonOptions pent;
    auto* pc = app.add_subcommand("pentagon", "pentagon, 1-4, cubic and projector residuals");
    pc->add_option("file", pent.file, "algebra JSON")->required();
    pc->add_option("--tol", pent.tol, "tolerance");
    pc->add_flag("--json", pent.json, "emit the report as JSON");

    LensOptions lens;
    auto* l = app.add_subcommand("lens", "state-sum invariant of L(p, q)");
    l->add_option("file", lens.file, "algebra JSON")->required();
    l->add_option("--p", lens.p, "p >= 3")->required();
    l->add_option("--q", lens.q, "1 <= q < p, coprime to p")->required();
    l->add_option("--h", lens.h, "bilinear form JSON");
    l->add_option("--dump-network", lens.dump, "write the contraction network as JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitInputError;
    }

    const std::string command = echo(args);
    try {
        if (c->parsed()) return cmd_check(check, command, out);
        if (f->parsed()) return cmd_family(fam, command, out, err);
        if (u->parsed()) return cmd_full(full, command, out, err);
        if (pc->parsed()) return cmd_pentagon(pent, command, out);
        if (l->parsed()) return cmd_lens(lens, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace triqal
