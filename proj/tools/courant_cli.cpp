// courant: command-line front end for the exact Courant-structure kernel.
//
// Exit codes: 0 = all checks passed / computation succeeded,
//             1 = a verification identity failed (witness printed),
//             2 = input error.
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ca/connection.hpp"
#include "ca/dirac.hpp"
#include "ca/generalized.hpp"
#include "ca/parse.hpp"
#include "ca/random.hpp"
#include "ca/structure_file.hpp"
#include "ca/transitive.hpp"

using namespace ca;

namespace {

struct Options {
    std::string file;
    std::string structure = "courant";
    std::string phi;
    std::string suite = "all";
    std::uint64_t seed = 1;
    int degree = 2;
    int trials = 10;
    int count = 2;
    // dirac options
    std::string name = "L";
    std::string other;
    std::string form;
    std::string side = "plus";
};

struct Input {
    std::optional<StructureFile> sf;
    Chart chart;
};

Input load(const Options& opt) {
    Input in;
    if (!opt.file.empty()) {
        in.sf = parse_structure_file(opt.file);
        in.chart = in.sf->chart;
    } else {
        in.chart = Chart({"x", "y"});
    }
    return in;
}

[[noreturn]] void input_error(const std::string& what) { throw Error(what); }

std::optional<DifferentialForm> phi_of(const Options& opt, const Chart& chart) {
    if (opt.phi.empty()) return std::nullopt;
    return parse_form(opt.phi, chart);
}

CourantStructure build_structure(const Options& opt, const Input& in) {
    const Chart& c = in.chart;
    if (opt.structure == "courant") return standard_structure(c, Flavor::Skew);
    if (opt.structure == "dorfman") return standard_structure(c, Flavor::Product);
    if (opt.structure == "sw") {
        auto phi = phi_of(opt, c);
        if (!phi) input_error("--structure sw needs --phi <3-form>");
        return twisted_structure(c, *phi);
    }
    if (opt.structure == "poisson") {
        if (!in.sf || !in.sf->bivector)
            input_error("--structure poisson needs a file with a bivector block");
        return bialgebroid_structure(Bivector(c, *in.sf->bivector), Flavor::Skew);
    }
    if (opt.structure == "paraherm") {
        if (!in.sf || !in.sf->metric || !in.sf->endomorphism)
            input_error("--structure paraherm needs metric and endomorphism blocks");
        return paraherm_structure(
            ParaHermitianTM(MetricOnTM(c, *in.sf->metric), EndomorphismField(c, *in.sf->endomorphism)));
    }
    if (opt.structure == "riemannian") {
        MetricOnTM g = (in.sf && in.sf->metric) ? MetricOnTM(c, *in.sf->metric)
                                                : MetricOnTM::identity(c);
        return riemannian_triple(g, phi_of(opt, c));
    }
    if (opt.structure == "connection") {
        if (!in.sf || !in.sf->metric || !in.sf->anchor)
            input_error("--structure connection needs metric and anchor blocks");
        PseudoEuclideanBundle b(c, *in.sf->metric);
        MetricConnection nabla = in.sf->connection.empty()
                                     ? default_metric_connection(b)
                                     : MetricConnection(b, in.sf->connection);
        return bracket0(nabla, *in.sf->anchor);
    }
    input_error("unknown structure '" + opt.structure +
                "' (courant, dorfman, sw, poisson, paraherm, riemannian, connection)");
}

Suite suite_of(const std::string& s) {
    if (s == "all") return Suite::All;
    if (s == "def11") return Suite::Def11;
    if (s == "prop12") return Suite::Prop12;
    if (s == "skew") return Suite::SkewIToV;
    if (s == "jacobi") return Suite::JacobiIII;
    input_error("unknown suite '" + s + "' (all, def11, prop12, skew, jacobi)");
}

// Sections from the file when present, random otherwise.
std::vector<ESection> sections_for(const Options& opt, const Input& in,
                                   const CourantStructure& s, int count) {
    std::vector<ESection> out;
    if (in.sf && !in.sf->sections.empty()) {
        for (const auto& def : in.sf->sections) {
            if (def.comp.size() != s.rank())
                input_error("section '" + def.name + "' has " +
                            std::to_string(def.comp.size()) + " components, expected " +
                            std::to_string(s.rank()));
            out.push_back(def.comp);
        }
        if (static_cast<int>(out.size()) < count)
            input_error("structure file provides fewer than " + std::to_string(count) +
                        " sections");
        out.resize(count);
        return out;
    }
    Rng rng(opt.seed);
    for (int k = 0; k < count; ++k)
        out.push_back(rng.next_section(s.rank(), s.chart().dim(), opt.degree));
    return out;
}

int run_apply(const Options& opt, Flavor flavor) {
    Input in = load(opt);
    CourantStructure s = convert(build_structure(opt, in), flavor);
    auto es = sections_for(opt, in, s, 2);
    std::cout << "e1 = " << s.section_str(es[0]) << "\n";
    std::cout << "e2 = " << s.section_str(es[1]) << "\n";
    std::cout << (flavor == Flavor::Skew ? "[e1,e2] = " : "e1 * e2 = ")
              << s.section_str(s.apply(es[0], es[1])) << "\n";
    return 0;
}

int run_verify(const Options& opt) {
    Input in = load(opt);
    CourantStructure s = build_structure(opt, in);
    Report r = verify(s, suite_of(opt.suite), {opt.seed, opt.degree, opt.trials});
    std::cout << r.str();
    return r.all_pass() ? 0 : 1;
}

int run_obstruction(const Options& opt) {
    Input in = load(opt);
    CourantStructure s = build_structure(opt, in);
    auto es = sections_for(opt, in, s, 3);
    Obstructions ob = obstructions(s, es[0], es[1], es[2]);
    std::cout << "L = " << s.section_str(ob.L) << "\n";
    std::cout << "J = " << s.section_str(ob.J) << "\n";
    std::cout << "C = " << s.section_str(ob.C) << "\n";
    return 0;
}

int run_transitive(const Options& opt) {
    Input in = load(opt);
    CourantStructure s = build_structure(opt, in);
    PseudoEuclideanBundle b(s.chart(), s.gE(), s.labels());
    TransitiveData t = decompose(b, s.rho());
    std::cout << "rank E = " << t.r() << ", dim M = " << t.n() << "\n";
    std::cout << "dim ker rho = " << t.r() - t.n() << ", dim Q = " << t.Q.cols()
              << ", dim im partial = " << t.D.cols() << ", dim C = " << t.C.cols() << "\n";
    SuitableConnection sc = suitable_connection(t);
    std::cout << "suitable connection flat: " << (is_flat(sc.nabla) ? "yes" : "no") << "\n";
    if (in.sf && in.sf->threeform) {
        EThreeForm lam = *in.sf->threeform;
        if (lam.rank() != t.r()) input_error("threeform rank does not match the bundle rank");
        Report r = restricted_check(t, sc, lam);
        std::cout << r.str();
        return r.all_pass() ? 0 : 1;
    }
    return 0;
}

int run_whitney(const Options& opt) {
    Input in = load(opt);
    if (!in.sf || !in.sf->metric || in.sf->connection.empty())
        input_error("whitney needs a file with metric and connection blocks for the summand");
    CourantStructure base = standard_structure(in.chart, Flavor::Skew);
    PseudoEuclideanBundle cb(in.chart, *in.sf->metric);
    MetricConnection nabla(cb, in.sf->connection);
    std::cout << "summand connection flat: " << (is_flat(nabla) ? "yes" : "no") << "\n";
    CourantStructure s = whitney_sum(base, nabla);
    Report r = verify(s, suite_of(opt.suite), {opt.seed, opt.degree, opt.trials});
    std::cout << r.str();
    return r.all_pass() ? 0 : 1;
}

int run_foliated(const Options& opt) {
    Input in = load(opt);
    if (!in.sf || !in.sf->metric || !in.sf->anchor || !in.sf->foliation)
        input_error("foliated needs a file with metric, anchor and foliation blocks");
    PseudoEuclideanBundle b(in.chart, *in.sf->metric);
    EThreeForm bform =
        in.sf->threeform ? *in.sf->threeform : EThreeForm::zero(b.rank());
    FoliatedBracket fb = foliated_bracket(b, *in.sf->foliation, *in.sf->anchor, bform);
    std::cout << fb.conditions.str();
    Report r = verify(fb.structure, suite_of(opt.suite), {opt.seed, opt.degree, opt.trials});
    std::cout << r.str();
    return (fb.conditions.all_pass() && r.all_pass()) ? 0 : 1;
}

// --- dirac subcommands ------------------------------------------------------

const DiracBlock& dirac_block(const Input& in) {
    if (!in.sf || !in.sf->dirac) input_error("dirac commands need a file with a dirac block");
    return *in.sf->dirac;
}

QMat named_subspace(const DiracBlock& blk, const std::string& name) {
    for (const auto& [n, m] : blk.subspaces)
        if (n == name) return m;
    input_error("no subspace named '" + name + "' in the dirac block");
}

QMat named_form(const DiracBlock& blk, const std::string& name) {
    for (const auto& [n, m] : blk.forms)
        if (n == name) return m;
    input_error("no form named '" + name + "' in the dirac block");
}

void print_rows(const QMat& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) std::cout << (c ? ", " : "") << m(r, c);
        std::cout << "\n";
    }
}

int run_dirac(const Options& opt, const std::string& action) {
    Input in = load(opt);
    const DiracBlock& blk = dirac_block(in);
    ParaHermitianSpace w(blk.n);
    if (action == "is_dirac") {
        DiracCertificate cert = is_dirac(w, Subspace(named_subspace(blk, opt.name)));
        if (cert.ok) {
            std::cout << opt.name << ": dirac\n";
            return 0;
        }
        std::cout << opt.name << ": not dirac (" << cert.reason << ")\n";
        return 1;
    }
    if (action == "invariants") {
        DiracInvariants inv = invariants(w, Subspace(named_subspace(blk, opt.name)));
        std::cout << "k=" << inv.k << " h=" << inv.h << " r=" << inv.r << "\n";
        return 0;
    }
    if (action == "graph") {
        Side side = opt.side == "minus" ? Side::Minus : Side::Plus;
        GraphData gd = graph_data(w, Subspace(named_subspace(blk, opt.name)), side);
        std::cout << "part (" << gd.part.dim() << " rows):\n";
        print_rows(gd.part.basis);
        std::cout << "form:\n";
        print_rows(gd.form);
        return 0;
    }
    if (action == "reconstruct") {
        Subspace lplus(named_subspace(blk, opt.name));
        QMat om = opt.form.empty() ? QMat(QMat::Zero(lplus.dim(), lplus.dim()))
                                   : named_form(blk, opt.form);
        Subspace l = reconstruct(w, lplus, om);
        std::cout << "dirac subspace (" << l.dim() << " rows):\n";
        print_rows(l.basis);
        return 0;
    }
    if (action == "complement") {
        if (opt.other.empty()) input_error("complement needs --other <subspace>");
        Subspace l(named_subspace(blk, opt.name));
        Subspace s(named_subspace(blk, opt.other));
        Subspace u = isotropic_complement(w, l, s, l.basis);
        std::cout << "isotropic complement:\n";
        print_rows(u.basis);
        return 0;
    }
    if (action == "transport") {
        if (opt.other.empty()) input_error("transport needs --other <subspace>");
        QMat psi = ph_transport(w, Subspace(named_subspace(blk, opt.name)),
                                Subspace(named_subspace(blk, opt.other)));
        std::cout << "psi:\n";
        print_rows(psi);
        return 0;
    }
    input_error("unknown dirac action '" + action + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact symbolic kernel for Courant algebroid structures"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--file", opt.file, "structure-definition file");
    app.add_option("--structure", opt.structure,
                   "courant, dorfman, sw, poisson, paraherm, riemannian, connection");
    app.add_option("--phi", opt.phi, "inline 3-form, e.g. \"w*dx^dy^dz\"");
    app.add_option("--suite", opt.suite, "all, def11, prop12, skew, jacobi");
    app.add_option("--seed", opt.seed, "random seed");
    app.add_option("--degree", opt.degree, "max degree of random sections");
    app.add_option("--trials", opt.trials, "random trials per identity");
    app.fallthrough();

    auto* bracket = app.add_subcommand("bracket", "skew bracket of two sections");
    auto* dorfman = app.add_subcommand("dorfman", "Dorfman product of two sections");
    auto* verify_cmd = app.add_subcommand("verify", "run identity suites");
    auto* obstruction = app.add_subcommand("obstruction", "jacobiator defects L, J, C");
    auto* transitive = app.add_subcommand("transitive", "anchor splitting and restricted check");
    auto* whitney = app.add_subcommand("whitney", "Whitney sum with a connection bundle");
    auto* foliated = app.add_subcommand("foliated", "foliated bracket conditions");
    auto* dirac = app.add_subcommand("dirac", "linear Dirac subspace computations");
    dirac->require_subcommand(1);
    std::vector<CLI::App*> dirac_actions;
    for (const char* a : {"is_dirac", "invariants", "graph", "reconstruct", "complement",
                          "transport"})
        dirac_actions.push_back(dirac->add_subcommand(a));
    for (CLI::App* a : dirac_actions) {
        a->add_option("--name", opt.name, "subspace name in the dirac block");
        a->add_option("--other", opt.other, "second subspace name");
        a->add_option("--form", opt.form, "form name in the dirac block");
        a->add_option("--side", opt.side, "plus or minus");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bracket->parsed()) return run_apply(opt, Flavor::Skew);
        if (dorfman->parsed()) return run_apply(opt, Flavor::Product);
        if (verify_cmd->parsed()) return run_verify(opt);
        if (obstruction->parsed()) return run_obstruction(opt);
        if (transitive->parsed()) return run_transitive(opt);
        if (whitney->parsed()) return run_whitney(opt);
        if (foliated->parsed()) return run_foliated(opt);
        if (dirac->parsed())
            return run_dirac(opt, dirac->get_subcommands().front()->get_name());
    } catch (const Error& e) {
        std::cerr << "courant: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
