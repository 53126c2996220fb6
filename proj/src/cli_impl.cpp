#include <planch/cli.hpp>

#include <planch/catalog.hpp>
#include <planch/gln.hpp>
#include <planch/oracle.hpp>
#include <planch/serialize.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

namespace planch {

namespace {

struct StreamTrace : TraceSink {
    std::ostream& os;
    explicit StreamTrace(std::ostream& o) : os(o) {}
    void event(const std::string& line) override { os << "# " << line << "\n"; }
};

bool rational_coeffs(const LaurentPoly& p) {
    return std::all_of(p.terms().begin(), p.terms().end(),
                       [](const auto& t) { return t.second.is_rational(); });
}

bool integer_coeffs(const LaurentPoly& p) {
    return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& t) {
        return t.second.is_rational() && denominator(t.second.rational_part()) == 1;
    });
}

std::string join_ints(const std::vector<int>& v, char sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

std::vector<int> upto(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

LaurentPoly group_poincare(const std::string& group, int n) {
    if (group == "sp4") return poincare(WeylFamily::C2);
    if (group == "g2") return poincare(WeylFamily::G2);
    return poincare(WeylFamily::A, std::max(n, 1));
}

// root-of-unity orders covered by the group's Poincare polynomial degrees
std::vector<int> group_orders(const std::string& group, int n) {
    if (group == "sp4") return upto(2, 4);
    if (group == "g2") return upto(2, 6);
    return n >= 2 ? upto(2, n) : std::vector<int>{};
}

EngineOptions engine_opts(const RunConfig& cfg, TraceSink* sink, int vars) {
    EngineOptions opt;
    opt.use_vanishing_shortcut = !cfg.disable_shortcut;
    opt.trace = sink;
    if (cfg.reorder_seed != 0) {
        std::vector<int> order(vars);
        std::iota(order.begin(), order.end(), 0);
        std::mt19937 rng(cfg.reorder_seed);
        std::shuffle(order.begin(), order.end(), rng);
        opt.elimination_order = order;
    }
    return opt;
}

Json opt_int(const std::optional<int>& k) { return k ? Json(*k) : Json(nullptr); }

std::string infer_format(const RunConfig& cfg, const std::string& fallback) {
    if (!cfg.format.empty()) return cfg.format;
    auto dot = cfg.output.rfind('.');
    if (dot != std::string::npos) {
        std::string ext = cfg.output.substr(dot + 1);
        if (ext == "json") return "json";
        if (ext == "csv") return "csv";
        if (ext == "txt") return "text";
    }
    return fallback;
}

int emit(const RunConfig& cfg, const std::string& payload, std::ostream& out, std::ostream& err) {
    if (cfg.output.empty()) {
        out << payload;
        return kExitOk;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
        err << "cannot open '" << cfg.output << "'\n";
        return kExitIo;
    }
    f << payload;
    f.flush();
    if (!f.good()) {
        err << "write failed for '" << cfg.output << "'\n";
        return kExitIo;
    }
    return kExitOk;
}

Rational multiplicity_scale(const LeviSpec& levi) {
    Rational scale(1);
    for (int m : levi.multiplicities())
        for (int i = 2; i <= m; ++i) scale /= i;
    return scale;
}

// Normalized density whose quadrature approximates fd1 directly; nullopt when
// the (possibly sliced) grid would exceed the sample budget.
std::optional<Integrand> gln_oracle_integrand(const LeviSpec& levi, int grid) {
    GlnDensity d = build_gln_density(levi);
    Integrand g = d.density;
    g.mul_scalar(d.constant * RatFunc(multiplicity_scale(levi)));
    if (auto s = slice_reduce(g)) g = *s;
    long long samples = 1;
    for (int i = 0; i < g.active_count(); ++i) {
        samples *= grid;
        if (samples > (1LL << 28)) return std::nullopt;
    }
    return g;
}

// catalog component integrand with the trace power applied, paired with its
// exact value on the same normalization (bare for sp4, prefactored for g2)
std::pair<RatFunc, Integrand> component_pair(const std::string& group, const std::string& levi,
                                             int e) {
    const DensityEntry& ent = density_entry(levi);
    if ((group == "sp4") != (ent.group == CatalogGroup::Sp4))
        throw CatalogError("component '" + levi + "' does not belong to group '" + group + "'");
    TracePoly t{{e, Rational(1)}};
    Integrand g = ent.integrand;
    g.mul_var_pow(0, e);
    if (group == "sp4") return {sp4_component_integral(levi, t), std::move(g)};
    g.mul_scalar(ent.prefactor);
    return {g2_component_integral(levi, t), std::move(g)};
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Json doc;
    doc["command"] = "eval";
    doc["group"] = cfg.group;
    StreamTrace sink(err);
    TraceSink* tr = cfg.trace_branches ? &sink : nullptr;

    if (cfg.group == "gln") {
        LeviSpec levi(cfg.partition);
        doc["partition"] = cfg.partition;
        GlnDensity d = build_gln_density(levi);
        EngineOptions opt = engine_opts(cfg, tr, levi.block_count());
        RatFunc engine_value = integrate_torus(d.density, opt);
        RatFunc closed = closed_form_value(levi);
        RatFunc fd = RatFunc(multiplicity_scale(levi)) * d.constant * engine_value;
        doc["fd1"] = compact_str(fd);
        doc["fd1_form"] = serialize(fd);
        doc["constant"] = compact_str(d.constant);
        doc["engine_value"] = compact_str(engine_value);
        doc["closed_value"] = compact_str(closed);
        doc["agree"] = engine_value == closed;
        doc["denominator"] = compact_str(RatFunc(fd.den()));
        doc["divides_k"] =
            opt_int(divides_power_of(fd.den(), group_poincare(cfg.group, levi.n()), levi.n()));
        SingularityReport sing = singularity_report(fd, group_orders(cfg.group, levi.n()));
        doc["singular_roots"] = sing.singular;
        doc["regular_roots"] = sing.regular;
    } else {
        const DensityEntry& ent = density_entry(cfg.levi);
        doc["levi"] = cfg.levi;
        doc["prefactor"] = compact_str(ent.prefactor);
        Json rows = Json::array();
        for (int e : cfg.trace_exps) {
            auto [value, ignored] = component_pair(cfg.group, cfg.levi, e);
            (void)ignored;
            RatFunc with_pref = cfg.group == "sp4" ? ent.prefactor * value : value;
            RatFunc bare = cfg.group == "sp4" ? value : value / ent.prefactor;
            Json row;
            row["trace_exp"] = e;
            row["value"] = compact_str(with_pref);
            row["value_form"] = serialize(with_pref);
            row["bare_integral"] = compact_str(bare);
            row["coefficients_integral"] = integer_coeffs(bare.num()) && integer_coeffs(bare.den());
            rows.push_back(std::move(row));
        }
        doc["values"] = std::move(rows);
    }

    std::string fmt = infer_format(cfg, "json");
    std::string payload;
    if (fmt == "text") {
        std::ostringstream t;
        if (cfg.group == "gln") {
            t << "fd1 = " << doc["fd1"].get<std::string>() << "\n";
            t << "engine = " << doc["engine_value"].get<std::string>() << "\n";
        } else {
            for (const auto& row : doc["values"])
                t << cfg.levi << " e=" << row["trace_exp"].get<int>() << "  "
                  << row["value"].get<std::string>() << "\n";
        }
        payload = t.str();
    } else {
        payload = doc.dump(1) + "\n";
    }
    return emit(cfg, payload, out, err);
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Json doc;
    doc["command"] = "check";
    bool pass = true;
    Json rows = Json::array();
    StreamTrace sink(err);
    TraceSink* tr = cfg.trace_branches ? &sink : nullptr;

    if (cfg.formal_degrees) {
        doc["target"] = "formal-degrees";
        for (const auto& label : formal_degree_labels()) {
            PoleCheck pc = check_formal_degree_poles(label);
            Json row;
            row["label"] = label;
            row["value"] = compact_str(formal_degree(label));
            row["ok"] = pc.ok;
            row["roots_of_unity"] = pc.roots_of_unity;
            row["poincare_power"] = opt_int(pc.poincare_power);
            row["witness"] = pc.witness;
            rows.push_back(std::move(row));
            pass = pass && pc.ok;
        }
    } else if (cfg.group == "gln") {
        doc["target"] = "gln";
        std::vector<std::vector<int>> parts;
        if (!cfg.partition.empty())
            parts.push_back(cfg.partition);
        else
            for (int n = 1; n <= cfg.all_partitions; ++n)
                for (const auto& p : partitions_of(n)) parts.push_back(p);
        for (const auto& p : parts) {
            LeviSpec levi(p);
            RatFunc closed = fd1_closed(levi);
            Json row;
            row["partition"] = p;
            row["fd1"] = compact_str(closed);
            // the residue engine is exact but costly; cross-check it on the
            // sizes the closed form was proved against, report beyond them
            if (levi.n() <= 5) {
                RatFunc eng = fd1(levi, engine_opts(cfg, tr, levi.block_count()));
                bool agree = eng == closed;
                row["agree"] = agree;
                pass = pass && agree;
            } else {
                row["agree"] = Json(nullptr);
            }
            auto k = divides_power_of(closed.den(), group_poincare(cfg.group, levi.n()), levi.n());
            row["divides_k"] = opt_int(k);
            pass = pass && k.has_value();
            if (!cfg.oracle_q.empty()) {
                auto g = gln_oracle_integrand(levi, cfg.grid);
                if (g) {
                    CompareReport rep = compare(closed, *g, cfg.oracle_q, cfg.tol, cfg.grid);
                    row["oracle_max_relerr"] = rep.max_relerr;
                    pass = pass && rep.pass;
                } else {
                    row["oracle_max_relerr"] = Json(nullptr);
                }
            }
            rows.push_back(std::move(row));
        }
    } else {
        doc["target"] = cfg.group;
        std::vector<std::string> labels;
        if (!cfg.levi.empty())
            labels.push_back(cfg.levi);
        else
            for (const auto& l : density_labels())
                if ((cfg.group == "sp4") == (density_entry(l).group == CatalogGroup::Sp4))
                    labels.push_back(l);
        LaurentPoly P = group_poincare(cfg.group, 0);
        for (const auto& label : labels)
            for (int e : cfg.trace_exps) {
                auto [value, g] = component_pair(cfg.group, label, e);
                Json row;
                row["levi"] = label;
                row["trace_exp"] = e;
                row["value"] = compact_str(value);
                bool zf = rational_coeffs(value.num()) && rational_coeffs(value.den());
                row["zeta_free"] = zf;
                auto k = divides_power_of(value.den(), P, 8);
                row["divides_k"] = opt_int(k);
                bool ok = zf && k.has_value();
                if (cfg.group == "g2") {
                    RatFunc bare = value / density_entry(label).prefactor;
                    bool ic = integer_coeffs(bare.num()) && integer_coeffs(bare.den());
                    row["coefficients_integral"] = ic;
                    ok = ok && ic;
                }
                if (!cfg.oracle_q.empty()) {
                    CompareReport rep = compare(value, g, cfg.oracle_q, cfg.tol, cfg.grid);
                    row["oracle_max_relerr"] = rep.max_relerr;
                    ok = ok && rep.pass;
                }
                row["ok"] = ok;
                pass = pass && ok;
                rows.push_back(std::move(row));
            }
    }

    doc["rows"] = std::move(rows);
    doc["pass"] = pass;
    std::string fmt = infer_format(cfg, "json");
    std::string payload;
    if (fmt == "text") {
        std::ostringstream t;
        for (const auto& row : doc["rows"]) t << row.dump() << "\n";
        t << (pass ? "pass" : "FAIL") << "\n";
        payload = t.str();
    } else {
        payload = doc.dump(1) + "\n";
    }
    int io = emit(cfg, payload, out, err);
    if (io != kExitOk) return io;
    return pass ? kExitOk : kExitCheckFailed;
}

struct ReportRow {
    std::string group;
    std::string label;
    RatFunc value;
    std::optional<int> divides_k;
    std::vector<int> regular, singular;
    std::optional<double> oracle_relerr;
};

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<ReportRow> table;
    Json components = Json::array();  // structured forms for the JSON rendering

    if (cfg.group == "gln") {
        int n = cfg.all_partitions;
        if (n == 0) n = std::accumulate(cfg.partition.begin(), cfg.partition.end(), 0);
        std::vector<std::vector<int>> parts =
            cfg.partition.empty() ? partitions_of(n) : std::vector<std::vector<int>>{cfg.partition};
        for (const auto& p : parts) {
            LeviSpec levi(p);
            ReportRow row;
            row.group = cfg.group;
            row.label = join_ints(p, '+');
            row.value = fd1_closed(levi);
            row.divides_k =
                divides_power_of(row.value.den(), group_poincare(cfg.group, levi.n()), levi.n());
            SingularityReport sing =
                singularity_report(row.value, group_orders(cfg.group, levi.n()));
            row.regular = sing.regular;
            row.singular = sing.singular;
            if (!cfg.oracle_q.empty())
                if (auto g = gln_oracle_integrand(levi, cfg.grid))
                    row.oracle_relerr =
                        compare(row.value, *g, cfg.oracle_q, cfg.tol, cfg.grid).max_relerr;
            Json comp;
            comp["partition"] = p;
            comp["fd1"] = compact_str(row.value);
            comp["fd1_form"] = serialize(row.value);
            components.push_back(std::move(comp));
            table.push_back(std::move(row));
        }
    } else {
        LaurentPoly P = group_poincare(cfg.group, 0);
        std::vector<std::string> labels;
        for (const auto& l : density_labels())
            if ((cfg.group == "sp4") == (density_entry(l).group == CatalogGroup::Sp4))
                labels.push_back(l);
        for (const auto& label : labels) {
            Json comp;
            comp["levi"] = label;
            comp["prefactor"] = compact_str(density_entry(label).prefactor);
            Json vals = Json::array();
            for (int e : cfg.trace_exps) {
                auto [value, g] = component_pair(cfg.group, label, e);
                ReportRow row;
                row.group = cfg.group;
                row.label = label + ":e=" + std::to_string(e);
                row.value = value;
                row.divides_k = divides_power_of(value.den(), P, 8);
                SingularityReport sing = singularity_report(value, group_orders(cfg.group, 0));
                row.regular = sing.regular;
                row.singular = sing.singular;
                if (!cfg.oracle_q.empty())
                    row.oracle_relerr =
                        compare(value, g, cfg.oracle_q, cfg.tol, cfg.grid).max_relerr;
                Json v;
                v["trace_exp"] = e;
                v["value"] = compact_str(value);
                v["value_form"] = serialize(value);
                vals.push_back(std::move(v));
                table.push_back(std::move(row));
            }
            comp["values"] = std::move(vals);
            components.push_back(std::move(comp));
        }
    }

    std::string fmt = infer_format(cfg, cfg.group == "gln" ? "csv" : "json");
    std::string payload;
    if (fmt == "csv") {
        std::ostringstream csv;
        csv << "group,partition/levi,value,denominator,divides_k,regular_roots,singular_roots,"
               "oracle_max_relerr\n";
        for (const auto& row : table) {
            csv << row.group << ',' << row.label << ',' << compact_str(row.value) << ','
                << compact_str(RatFunc(row.value.den())) << ','
                << (row.divides_k ? std::to_string(*row.divides_k) : "") << ','
                << join_ints(row.regular, ';') << ',' << join_ints(row.singular, ';') << ',';
            if (row.oracle_relerr) {
                std::ostringstream v;
                v << *row.oracle_relerr;
                csv << v.str();
            }
            csv << "\n";
        }
        payload = csv.str();
    } else {
        Json doc;
        doc["command"] = "report";
        doc["group"] = cfg.group;
        doc["components"] = std::move(components);
        payload = doc.dump(1) + "\n";
    }
    return emit(cfg, payload, out, err);
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    RatFunc exact;
    Integrand g(1);
    if (cfg.group == "gln") {
        LeviSpec levi(cfg.partition);
        exact = fd1_closed(levi);
        auto gi = gln_oracle_integrand(levi, cfg.grid);
        if (!gi) throw OracleError("grid too large for the variable count");
        g = *gi;
    } else {
        auto [value, gi] = component_pair(cfg.group, cfg.levi, cfg.trace_exps.at(0));
        exact = value;
        g = gi;
    }
    std::vector<double> qs = cfg.oracle_q.empty() ? std::vector<double>{2.0} : cfg.oracle_q;
    CompareReport rep = compare(exact, g, qs, cfg.tol, cfg.grid);
    std::string fmt = infer_format(cfg, "text");
    std::string payload;
    if (fmt == "json") {
        Json doc;
        doc["command"] = "oracle";
        doc["group"] = cfg.group;
        doc["exact"] = compact_str(exact);
        Json rows = Json::array();
        for (const auto& r : rep.rows) {
            Json row;
            row["q"] = r.q0;
            row["exact"] = r.exact_value.real();
            row["quad"] = r.quad.real();
            row["relerr"] = r.relerr;
            rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
        Json refs = Json::array();
        for (const auto& r : rep.refinements) {
            Json row;
            row["q"] = r.q0;
            row["coarse_n"] = r.coarse_n;
            row["fine_n"] = r.fine_n;
            row["coarse_err"] = r.coarse_err;
            row["fine_err"] = r.fine_err;
            refs.push_back(std::move(row));
        }
        doc["refinements"] = std::move(refs);
        doc["pass"] = rep.pass;
        payload = doc.dump(1) + "\n";
    } else {
        payload = rep.text;
    }
    int io = emit(cfg, payload, out, err);
    if (io != kExitOk) return io;
    return rep.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

std::string compact_str(const RatFunc& f) {
    std::string s = f.str();
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    return s;
}

std::string validate_config(const RunConfig& cfg) {
    if (cfg.command != "eval" && cfg.command != "check" && cfg.command != "report" &&
        cfg.command != "oracle")
        return "unknown command '" + cfg.command + "'";
    if (!cfg.group.empty() && cfg.group != "gln" && cfg.group != "sp4" && cfg.group != "g2")
        return "unknown group '" + cfg.group + "'";
    if (!cfg.partition.empty() && cfg.group != "gln") return "--partition requires --group gln";
    if (!cfg.levi.empty() && cfg.group != "sp4" && cfg.group != "g2")
        return "--levi requires --group sp4 or --group g2";
    for (int b : cfg.partition)
        if (b <= 0) return "partition parts must be positive";
    if (cfg.rank != 1) return "only the rank-1 normalization is implemented";
    if (!(cfg.tol > 0)) return "tolerance must be positive";
    if (cfg.grid < 64 || (cfg.grid & (cfg.grid - 1)) != 0)
        return "grid must be a power of two >= 64";
    for (double q : cfg.oracle_q)
        if (!(q > 1.0)) return "oracle q values must be > 1";
    if (cfg.all_partitions < 0 || cfg.all_partitions > 6)
        return "partition sweeps support n <= 6";
    if (!cfg.format.empty() && cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
        return "unknown format '" + cfg.format + "'";
    if (cfg.command == "eval" || cfg.command == "oracle") {
        if (cfg.group.empty()) return cfg.command + " needs --group";
        if (cfg.group == "gln" && cfg.partition.empty())
            return cfg.command + " --group gln needs --partition";
        if (cfg.group != "gln" && cfg.levi.empty())
            return cfg.command + " needs --levi for this group";
    }
    if (cfg.command == "check") {
        if (!cfg.formal_degrees && cfg.group.empty()) return "check needs --group or --formal-degrees";
        if (cfg.group == "gln" && cfg.partition.empty() && cfg.all_partitions == 0)
            return "check --group gln needs --partition or --all-partitions";
    }
    if (cfg.command == "report") {
        if (cfg.group.empty()) return "report needs --group";
        if (cfg.group == "gln" && cfg.all_partitions == 0 && cfg.partition.empty())
            return "report --group gln needs -n or --partition";
    }
    return "";
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::string why = validate_config(cfg);
    if (!why.empty()) {
        err << "config error: " << why << "\n";
        return kExitConfig;
    }
    try {
        if (cfg.command == "eval") return cmd_eval(cfg, out, err);
        if (cfg.command == "check") return cmd_check(cfg, out, err);
        if (cfg.command == "report") return cmd_report(cfg, out, err);
        return cmd_oracle(cfg, out, err);
    } catch (const ContourPoleError& e) {
        err << "contour pole: " << e.what() << "\n";
        return kExitContourPole;
    } catch (const OracleError& e) {
        err << "contour pole: " << e.what() << "\n";
        return kExitContourPole;
    } catch (const CatalogError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"exact torus-residue evaluation of Iwahori-spherical Plancherel cell integrals"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--group", cfg.group, "gln | sp4 | g2");
        sub->add_option("--partition", cfg.partition, "block sizes, e.g. 1,1")->delimiter(',');
        sub->add_option("--levi", cfg.levi, "component label: Mh, Ms, M1 or M2");
        sub->add_option("--trace-exp", cfg.trace_exps, "trace exponents, e.g. 0 or -2,0,2")
            ->delimiter(',');
        sub->add_option("--oracle-q", cfg.oracle_q, "quadrature comparison q values")
            ->delimiter(',');
        sub->add_option("--tol", cfg.tol, "oracle relative tolerance");
        sub->add_option("--grid", cfg.grid, "quadrature points per circle");
        sub->add_option("--rank", cfg.rank, "normalization rank (only 1)");
        sub->add_option("--format", cfg.format, "json | csv | text");
        sub->add_option("-o,--output", cfg.output, "write the result to this file");
        sub->add_flag("--trace", cfg.trace_branches, "log residue decisions to stderr");
        sub->add_flag("--disable-shortcut", cfg.disable_shortcut, "turn off the vanishing shortcut");
        sub->add_option("--reorder-seed", cfg.reorder_seed, "shuffle the elimination order");
    };
    CLI::App* ev = app.add_subcommand("eval", "evaluate one cell or component");
    CLI::App* ch = app.add_subcommand("check", "verify identities, denominators and oracles");
    ch->add_option("--all-partitions", cfg.all_partitions, "run every partition of 1..n");
    ch->add_flag("--formal-degrees", cfg.formal_degrees, "pole-check the formal-degree catalog");
    CLI::App* rp = app.add_subcommand("report", "emit CSV/JSON artifact tables");
    rp->add_option("-n", cfg.all_partitions, "tabulate the partitions of n");
    CLI::App* orc = app.add_subcommand("oracle", "numeric quadrature comparison");
    for (CLI::App* sub : {ev, ch, rp, orc}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    cfg.command = app.get_subcommands().at(0)->get_name();
    return run_command(cfg, std::cout, std::cerr);
}

}  // namespace planch
