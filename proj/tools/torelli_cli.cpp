// torelli: command-line frontend.
#include "torelli/acceptance.hpp"
#include "torelli/chern.hpp"
#include "torelli/ctp.hpp"
#include "torelli/excess.hpp"
#include "torelli/graph.hpp"
#include "torelli/newton.hpp"
#include "torelli/period.hpp"
#include "torelli/pipeline.hpp"
#include "torelli/taut.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

using namespace torelli;

namespace {

struct Mismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Usage : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Human lines go to stdout in human mode; key<TAB>value records in machine mode.
struct Out {
    bool machine = false;
    void human(const std::string &s) const
    {
        if (!machine)
            std::cout << s << "\n";
    }
    void kv(const std::string &k, const std::string &v) const
    {
        if (machine)
            std::cout << k << "\t" << v << "\n";
    }
    // Same text in both modes.
    void both(const std::string &k, const std::string &v, const std::string &h) const
    {
        machine ? kv(k, v) : human(h);
    }
    void explain(const std::vector<std::string> &anchors) const
    {
        for (const auto &a : anchors)
            machine ? kv("anchor", a) : human("  [" + a + "]");
    }
};

std::string fmt_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string fmt_cd(period::cd z)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.15g%+.15gi", z.real(), z.imag());
    return buf;
}

std::string fmt_err(double e)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", e);
    return buf;
}

void numeric(const Out &out, const std::string &key, period::cd v, double err)
{
    out.kv(key + ".value", fmt_cd(v));
    out.kv(key + ".err", fmt_err(err));
    out.human(key + " = " + fmt_cd(v) + " (+- " + fmt_err(err) + ")");
}

// "lambda2", "kappa1", "psi_p" / "psi1", "delta", "delta_irr", "1".
TautClass named_class(const Ambient &amb, const std::string &name)
{
    auto index = [&](std::size_t at) {
        try {
            return std::stoi(name.substr(at));
        } catch (const std::exception &) {
            throw Usage("bad class name '" + name + "'");
        }
    };
    if (name == "1")
        return unit_class(amb);
    if (name == "delta")
        return delta_class(amb);
    if (name == "delta_irr")
        return delta_irr(amb);
    if (name.rfind("lambda", 0) == 0)
        return lambda_class(amb, index(6));
    if (name.rfind("kappa", 0) == 0)
        return kappa_class(amb, index(5));
    if (name.rfind("psi", 0) == 0) {
        std::string m = name.substr(name.size() > 3 && name[3] == '_' ? 4 : 3);
        if (!amb.has_marking(m))
            throw Usage("no marking '" + m + "' on " + amb.str());
        return psi_class(amb, m);
    }
    throw Usage("unknown class '" + name + "' (lambdaK, kappaK, psiM, delta, delta_irr, 1)");
}

std::string hodge_monomial(const chern::HodgeExpression::Exps &e)
{
    if (e.empty())
        return "1";
    std::string s;
    for (auto [i, p] : e) {
        if (!s.empty())
            s += "*";
        s += "lambda" + std::to_string(i);
        if (p > 1)
            s += "^" + std::to_string(p);
    }
    return s;
}

void print_hodge(const chern::HodgeExpression &h)
{
    if (h.is_zero()) {
        std::cout << "0\n";
        return;
    }
    for (const auto &[e, c] : h.terms())
        std::cout << c.str() << "\t" << hodge_monomial(e) << "\n";
}

void print_class(const TautClass &c)
{
    std::string s = c.serialize();
    std::cout << (s.empty() ? "0\n" : s);
    if (!s.empty() && s.back() != '\n')
        std::cout << "\n";
}

std::string read_arg(const std::string &arg)
{
    if (arg == "-")
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::string s = arg;
    for (auto &ch : s)
        if (ch == '|')
            ch = '\n';
    return s;
}

const std::vector<std::string> kChernAnchors{
    "log cotangent Chern character via Bernoulli polynomials (Chiodo)",
    "boundary structure sheaves via GRR with the normal bundle",
    "Newton identities ch -> c"};

const std::vector<std::string> kG4Anchors{
    "Chern classes of T M4^ct and t^* T A4",
    "diagonal components Delta+/Delta-",
    "(1,3)-tree components A+/A- via forgetful and gluing maps",
    "(2,2)-tree component B",
    "excess multiplicities m(d_A,d_B) on the divisorial intersections Z1..Z4",
    "residual intersection model for Z5, Z6"};

const std::vector<std::string> kG5Anchors{
    "Chern character of T M5 on the interior (Mumford relation)",
    "Chern character of Sym^2 E^dual, power-sum reduction",
    "c3 of the normal bundle by Newton identities",
    "lambda_g lambda_{g-1} socle evaluation",
    "hyperelliptic locus [H5] = 31/30 kappa3 (Schmitt-van Zelm), multiplicity m(3,3)"};

const std::vector<std::string> kAbar4Anchors{
    "c1 of the log tangent bundle of the partial compactification of A4",
    "pullback of D to delta_irr",
    "c1(T Mbar4) with delta_irr coefficient 2"};

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Torelli map pullbacks, excess multiplicities, combinatorial Torelli pairs and periods", "torelli"};
    app.require_subcommand(1);
    app.fallthrough();
    bool machine = false, explain = false;
    std::uint64_t seed = 20240601;
    app.add_flag("--machine", machine, "emit key<TAB>value records");
    app.add_flag("--explain", explain, "print the anchors behind a pipeline result");
    app.add_option("--seed", seed, "random seed for property checks");

    // chern
    auto *ch = app.add_subcommand("chern", "Chern character / classes of tangent bundles");
    std::string space;
    int cg = 0, cn = 0, cdeg = 0;
    std::string what = "c";
    bool reduced = false;
    ch->add_option("--space", space)->required()->check(CLI::IsMember({"mbar", "mct", "ag"}));
    ch->add_option("--g", cg)->required()->check(CLI::Range(1, 12));
    ch->add_option("--n", cn)->check(CLI::Range(0, 8));
    ch->add_option("--deg", cdeg)->required()->check(CLI::Range(1, 12));
    ch->add_option("--what", what)->check(CLI::IsMember({"ch", "c"}));
    ch->add_flag("--reduced", reduced, "A_g: reduce modulo the even power sums");

    // taut
    auto *ta = app.add_subcommand("taut", "tautological classes and graph canonicalization");
    ta->require_subcommand(1);
    auto *ta_canon = ta->add_subcommand("canon", "canonical form of a decorated graph");
    std::string graph_text, policy_text = "ct";
    ta_canon->add_option("graph", graph_text, "V ...; E ...; L ...; decor ...")->required();
    ta_canon->add_option("--policy", policy_text)->check(CLI::IsMember({"ct", "stable"}));
    auto *ta_class = ta->add_subcommand("class", "serialize a named class or a product of named classes");
    int tg = 0, tn = 0;
    std::vector<std::string> names;
    ta_class->add_option("--g", tg)->required()->check(CLI::Range(1, 12));
    ta_class->add_option("--n", tn)->check(CLI::Range(0, 8));
    ta_class->add_option("--policy", policy_text)->check(CLI::IsMember({"ct", "stable"}));
    ta_class->add_option("names", names, "factors: lambdaK kappaK psiM delta delta_irr")->required();

    // excess
    auto *ex = app.add_subcommand("excess", "excess intersection multiplicities");
    ex->require_subcommand(1);
    auto *ex_m = ex->add_subcommand("m", "multiplicity m(d_A, d_B)");
    int da = 0, db = 0, shift = 0;
    auto *shift_opt = ex_m->add_option("--shift", shift)->check(CLI::NonNegativeNumber);
    ex_m->add_option("--da", da)->required()->check(CLI::PositiveNumber);
    ex_m->add_option("--db", db)->required()->check(CLI::PositiveNumber);
    auto *ex_or = ex->add_subcommand("oracle", "direct Chern-class computation on a local model");
    std::string model;
    ex_or->add_option("--model", model)->required()->check(CLI::IsMember(excess::builtin_model_names()));
    auto *ex_res = ex->add_subcommand("residual", "the residual intersection model");

    // ctp
    auto *ct = app.add_subcommand("ctp", "combinatorial Torelli pairs");
    ct->require_subcommand(1);
    auto *ct_comp = ct->add_subcommand("components", "irreducible components of the Torelli self-intersection");
    int ctg = 0, max_edges = -1;
    ct_comp->add_option("--g", ctg)->required()->check(CLI::Range(2, 12));
    ct_comp->add_option("--max-edges", max_edges)->check(CLI::NonNegativeNumber);
    auto *ct_dim = ct->add_subcommand("dim", "dimension of a component ('|' separates lines, '-' reads stdin)");
    std::string comp_text;
    ct_dim->add_option("component", comp_text)->required();
    auto *ct_pair = ct->add_subcommand("check-pairing", "admissibility of a half-edge pairing");
    std::string pair_text;
    ct_pair->add_option("pairing", pair_text, "g=G n=A,B blue i-j ... red i-j ...")->required();

    // period
    auto *pe = app.add_subcommand("period", "period matrices and the rho4 certificate");
    pe->require_subcommand(1);
    auto *pe_tau = pe->add_subcommand("tau", "period matrix of y^2 = prod (z - r_k)");
    std::vector<double> roots;
    pe_tau->add_option("--roots", roots)->required()->expected(6)->delimiter(',');
    auto *pe_rho = pe->add_subcommand("rho4", "rho4 with its error certificate");
    period::Rho4Config rcfg;
    bool report = false;
    std::string mode = "residue";
    pe_rho->add_option("--eps", rcfg.eps)->check(CLI::Range(1e-4, 0.5));
    pe_rho->add_option("--tol", rcfg.tol)->check(CLI::Range(1e-14, 1e-2));
    pe_rho->add_option("--mode", mode)->check(CLI::IsMember({"residue", "circle"}));
    pe_rho->add_flag("--report", report, "print every intermediate");

    // torelli
    auto *to = app.add_subcommand("torelli", "Torelli pullback pipelines");
    to->require_subcommand(1);
    auto *to_g4 = to->add_subcommand("g4", "t^* T4 on M4^ct");
    bool ledger = false;
    to_g4->add_flag("--ledger", ledger, "print every labeled contribution");
    auto *to_g5 = to->add_subcommand("g5", "t^* T5 on M5");
    auto *to_ab = to->add_subcommand("abar4", "pushforward of the boundary extension to Abar4");
    auto *to_dim = to->add_subcommand("dim", "dimension argument for T_g");
    int dg = 0;
    to_dim->add_option("--g", dg)->required()->check(CLI::Range(2, 30));

    auto *co = app.add_subcommand("constants", "imported reference constants");
    auto *st = app.add_subcommand("selftest", "run the acceptance criteria");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    Out out{machine};
    try {
        if (*ch) {
            if (space == "ag") {
                std::vector<chern::HodgeExpression> chs;
                for (int m = 1; m <= cdeg; ++m)
                    chs.push_back(chern::ch_tangent_Ag(cg, m, reduced));
                chern::HodgeExpression r = chs.back();
                if (what == "c") {
                    ChernCharVector<chern::HodgeExpression> v{chs};
                    r = chern_from_ch(v, cdeg, [](const auto &a, const auto &b) { return a * b; }).back();
                    if (reduced)
                        r = r.reduce();
                }
                print_hodge(r);
            } else {
                if (what == "c" && cdeg > 3)
                    throw Usage("Chern classes are available through degree 3");
                Ambient amb = Ambient::numbered(cg, cn, space == "mbar" ? Policy::Stable : Policy::CompactType);
                if (2 * cg - 2 + cn <= 0)
                    throw Usage("unstable (g, n)");
                TautClass r = what == "c" ? chern::chern_tangent_moduli(amb, cdeg)[cdeg - 1]
                                          : kappa1_expand(chern::ch_tangent(amb, cdeg));
                print_class(r);
            }
            if (explain)
                out.explain(kChernAnchors);
        } else if (*ta_canon) {
            Generator g = parse_generator(graph_text, parse_policy(policy_text));
            validate(g);
            CanonicalForm cf = canonicalize(g);
            out.both("canonical", to_string(cf.gen), to_string(cf.gen));
            out.both("automorphisms", std::to_string(cf.automorphisms), "|Aut| = " + std::to_string(cf.automorphisms));
        } else if (*ta_class) {
            if (2 * tg - 2 + tn <= 0)
                throw Usage("unstable (g, n)");
            Ambient amb = Ambient::numbered(tg, tn, parse_policy(policy_text));
            TautClass c = named_class(amb, names.at(0));
            for (std::size_t i = 1; i < names.size(); ++i)
                c = multiply(c, named_class(amb, names[i]));
            out.human(pretty(c));
            print_class(c);
        } else if (*ex_m) {
            long m = shift_opt->count() ? excess::multiplicity_shifted(da, db, shift)
                                        : excess::multiplicity({da, db});
            out.both("m", std::to_string(m), std::to_string(m));
        } else if (*ex_or) {
            auto lm = excess::builtin_model(model);
            long o = excess::oracle_multiplicity(lm, lm.dims);
            long f = excess::multiplicity(lm.dims);
            out.both("oracle", std::to_string(o), std::to_string(o));
            out.kv("formula", std::to_string(f));
            out.human(lm.name + ": d_A=" + std::to_string(lm.dims.d_A) + " d_B=" + std::to_string(lm.dims.d_B) +
                      ", formula gives " + std::to_string(f));
            if (o != f)
                throw Mismatch("oracle and formula disagree");
        } else if (*ex_res) {
            auto r = excess::verify_residual_model();
            out.both("total", r.total.str(), "total = " + r.total.str());
            out.both("divisor", r.divisor_part.str(), "divisor part = " + r.divisor_part.str());
            out.both("residual", r.residual_part.str(), "residual part = " + r.residual_part.str());
        } else if (*ct_comp) {
            std::optional<int> me;
            if (max_edges >= 0)
                me = max_edges;
            auto comps = ctp::enumerate_components(ctg, me);
            out.kv("count", std::to_string(comps.size()));
            for (const auto &c : comps) {
                int d = ctp::component_dimension(c);
                out.kv(c.name(), std::to_string(d));
                out.human("# " + c.name() + "  dim " + std::to_string(d));
                out.human(c.serialize());
            }
            out.human(std::to_string(comps.size()) + " components");
        } else if (*ct_dim) {
            ctp::Component c = ctp::Component::parse(read_arg(comp_text));
            std::string why;
            if (!c.valid(&why))
                throw Usage("invalid component: " + why);
            int d = ctp::component_dimension(c);
            out.both("dim", std::to_string(d), std::to_string(d));
        } else if (*ct_pair) {
            auto p = ctp::HalfEdgePairing::parse(read_arg(pair_text));
            auto v = ctp::check_pairing(p);
            out.both("ok", v.ok ? "1" : "0", v.ok ? "admissible" : "not admissible");
            if (!v.diagnostic.empty())
                out.both("diagnostic", v.diagnostic, v.diagnostic);
            if (v.ok != ctp::check_pairing_bruteforce(p))
                throw Mismatch("walker and union-find checks disagree");
        } else if (*pe_tau) {
            std::array<period::cd, 6> r;
            for (int i = 0; i < 6; ++i)
                r[i] = roots[i];
            auto pm = period::period_matrix(period::HyperellipticCurve::from_roots(r));
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    numeric(out, "tau" + std::to_string(i + 1) + std::to_string(j + 1), pm.tau[i][j], pm.error);
            out.both("symmetry_defect", fmt_err(pm.symmetry_defect), "symmetry defect " + fmt_err(pm.symmetry_defect));
            out.both("im_eigenvalues", fmt_double(pm.im_eigenvalues[0]) + "," + fmt_double(pm.im_eigenvalues[1]),
                     "Im tau eigenvalues " + fmt_double(pm.im_eigenvalues[0]) + ", " + fmt_double(pm.im_eigenvalues[1]));
            if (pm.symmetry_defect > 1e-8 || pm.im_eigenvalues[0] <= 0)
                throw Mismatch("period matrix fails the Riemann bilinear relations");
        } else if (*pe_rho) {
            rcfg.mode = mode == "circle" ? period::InnerMode::Circle : period::InnerMode::Residue;
            auto cert = period::rho4(rcfg);
            if (report) {
                if (machine) {
                    const period::cd vals[] = {cert.a, cert.b, cert.c, cert.d, cert.h2, cert.k2,
                                               cert.G1, cert.G2, cert.D1, cert.D2};
                    for (std::size_t i = 0; i < cert.field_error.size(); ++i)
                        numeric(out, cert.field_error[i].first, vals[i], cert.field_error[i].second);
                } else
                    for (const auto &l : cert.report())
                        if (l.rfind("rho4 ", 0) != 0)
                            out.human(l);
            }
            numeric(out, "rho4", cert.value, cert.error);
            out.both("certificate", cert.passes ? "pass" : "fail",
                     std::string("certificate ") + (cert.passes ? "PASS" : "FAIL") + ": |rho4| > " +
                         fmt_double(rcfg.margin) + " x error");
            out.kv("digest", cert.digest);
            if (!cert.passes)
                throw Mismatch("rho4 is not certified nonzero");
        } else if (*to_g4) {
            auto r = pipeline::t_pullback_g4();
            Ambient m4(4, {}, Policy::CompactType);
            if (ledger) {
                for (const auto &e : r.ledger.entries) {
                    out.kv("ledger." + e.label, e.multiplicity.str() + " * (" + pretty(e.cls) + ")");
                    out.human(e.label + "\t" + e.multiplicity.str() + " * (" + pretty(e.cls) + ")\t" + e.source +
                              "\t[" + e.anchor + "]");
                }
                for (const auto &[k, v] : r.intermediates)
                    out.both("step." + k, v, "  " + k + " = " + v);
            }
            out.both("t*T4", pretty(r.final), "t*T4 = " + pretty(r.final));
            if (explain)
                out.explain(kG4Anchors);
            if (!(r.final == Rational(16) * lambda_class(m4, 1)))
                throw Mismatch("t*T4 differs from 16 lambda1");
        } else if (*to_g5) {
            auto r = pipeline::t_pullback_g5();
            const auto &R = r.report;
            out.both("2c3(N)", R.two_c3_N.str(), "2 c3(N) = " + R.two_c3_N.str() + " kappa3");
            out.both("m(3,3)", std::to_string(R.multiplicity), "multiplicity m(3,3) = " + std::to_string(R.multiplicity));
            out.both("[H5]", R.hyperelliptic.str(), "[H5] = " + R.hyperelliptic.str() + " kappa3 (imported)");
            out.both("t*T5", pretty(r.final), "t*T5|M5 = " + pretty(r.final));
            if (explain)
                out.explain(kG5Anchors);
            Ambient m5(5, {}, Policy::CompactType);
            if (!(r.final == Rational(48, 5) * kappa_class(m5, 3)))
                throw Mismatch("t*T5 differs from 48/5 kappa3");
        } else if (*to_ab) {
            auto r = pipeline::t_pushforward_Abar4();
            out.both("c1_log_Abar4", chern::c1_log_Abar4().str(), "c1(Omega_log Abar4) = " + chern::c1_log_Abar4().str());
            out.both("diagonal", pretty(r.diagonal_each), "each diagonal component: " + pretty(r.diagonal_each));
            out.both("c1_delta_irr", r.c1_delta_irr.str(), "delta_irr coefficient of c1(T Mbar4) = " + r.c1_delta_irr.str());
            out.both("curve_side", pretty(r.curve_side), "t*T(Abar4) = " + pretty(r.curve_side));
            out.both("divisor", r.divisor.str(), "as a divisor: " + r.divisor.str());
            if (explain)
                out.explain(kAbar4Anchors);
        } else if (*to_dim) {
            auto v = pipeline::torelli_dimension(dg);
            out.both("dimension", std::to_string(v.dimension), "dim = " + std::to_string(v.dimension));
            out.both("vanishes", v.vanishes ? "1" : "0", v.vanishes ? "T_g vanishes by dimension" : "no vanishing by dimension");
            if (!v.note.empty())
                out.both("note", v.note, v.note);
            if (explain)
                out.explain({"dimension count of the Torelli self-intersection"});
        } else if (*co) {
            for (const auto &row : pipeline::reference_constants()) {
                out.kv(row.name, row.value);
                out.kv(row.name + ".tag", row.tag);
                out.kv(row.name + ".source", row.source);
                out.human(row.name + " = " + row.value + "\t[" + row.tag + "; " + row.source + "]");
            }
        } else if (*st) {
            bool ok = true;
            for (const auto &r : acceptance::run_all(seed)) {
                out.both("criterion" + std::to_string(r.id), r.passed() ? "pass" : "fail", r.summary());
                ok = ok && r.passed();
            }
            if (!ok)
                return 1;
        }
    } catch (const Usage &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ctp::MalformedPairing &e) {
        std::cerr << "malformed pairing: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Mismatch &e) {
        std::cerr << "mismatch: " << e.what() << "\n";
        return 1;
    } catch (const pipeline::PipelineMismatch &e) {
        std::cerr << "mismatch: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
