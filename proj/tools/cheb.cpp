#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <cheb/combinatorics.hpp>
#include <cheb/complement.hpp>
#include <cheb/reports.hpp>

using namespace cheb;

namespace {

void write_output(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << std::endl;
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open output file " + out_path);
        f << j.dump(2) << "\n";
    }
}

std::vector<unsigned> parse_index_list(const std::string& csv) {
    std::vector<unsigned> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(static_cast<unsigned>(std::stoul(item)));
    }
    return out;
}

// Layer modulus for layered campaigns when not given: the smallest prime
// factor r of n with gcd(r, n/r) = 1.
unsigned infer_layer_r(unsigned n) {
    for (unsigned r = 2; r <= n; ++r) {
        if (n % r != 0 || !is_prime(r)) continue;
        if (n / r >= 2 && gcd_u64(r, n / r) == 1) return r;
    }
    throw std::invalid_argument("layered mode: no prime factor r of n has gcd(r, n/r) = 1");
}

int run_minor_check(const CampaignSpec& spec_in, bool resume, u64 halt_after,
                    const std::string& out_path) {
    CampaignSpec spec = spec_in;
    if (spec.mode == CampaignMode::layered && spec.layer_r == 0) spec.layer_r = infer_layer_r(spec.n);
    validate(spec);

    auto log_path = progress_path(spec);
    ProgressHooks hooks;
    hooks.halt_after = halt_after;
    if (resume) {
        auto state = ProgressLog::load(log_path, spec_hash(spec));
        if (!state) {
            std::cerr << "resume: no progress log for this spec at " << log_path << "\n";
            return 2;
        }
        hooks.start_cursor = state->cursor;
        hooks.start_counts = state->counts;
        hooks.start_findings = state->findings;
    }
    ProgressLog log(log_path, spec_hash(spec));
    hooks.on_progress = [&log](u64 cursor, const CampaignCounts& counts,
                               const std::vector<Finding>& findings) {
        log.append(cursor, counts, findings);
    };

    CampaignReport report = run_campaign(spec, &hooks);
    write_output(to_json(report), out_path);
    return report.counts.singular > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chebminor: exact verification workbench for DFT submatrix nonsingularity"};
    app.require_subcommand(1);

    auto* mc = app.add_subcommand("minor-check", "enumerate and certify DFT submatrices");
    unsigned mc_n = 0;
    std::string mc_mode = "principal", mc_I, mc_J, mc_out, mc_screen = "auto";
    unsigned mc_r = 0, mc_min = 1, mc_max = 0, mc_jobs = 1;
    u64 mc_samples = 0, mc_seed = 0, mc_ceiling = 10000000, mc_halt = 0;
    bool mc_exhaustive = false, mc_resume = false;
    mc->add_option("--n", mc_n, "modulus of the root of unity")->required();
    mc->add_option("--mode", mc_mode, "principal | all-square | layered | single-pair");
    mc->add_option("--r", mc_r, "layer modulus for layered mode");
    mc->add_option("--min-size", mc_min, "smallest |I| to check");
    mc->add_option("--max-size", mc_max, "largest |I| to check (0 = n)");
    mc->add_flag("--exhaustive", mc_exhaustive, "sweep the whole class (default)");
    mc->add_option("--samples", mc_samples, "random sample count instead of exhaustive");
    mc->add_option("--seed", mc_seed, "sampling seed");
    mc->add_option("--jobs", mc_jobs, "worker threads (0 = hardware)");
    mc->add_option("--screen", mc_screen, "auto | off")->check(CLI::IsMember({"auto", "off"}));
    mc->add_option("--I", mc_I, "row indices for single-pair mode, comma separated");
    mc->add_option("--J", mc_J, "column indices for single-pair mode");
    mc->add_option("--max-class-size", mc_ceiling, "exhaustive ceiling (default 10^7)");
    mc->add_option("--out", mc_out, "write the JSON report here instead of stdout");
    mc->add_flag("--resume", mc_resume, "continue from the progress log");
    mc->add_option("--halt-after", mc_halt, "stop cleanly after this many pairs (testing)");

    auto* ga = app.add_subcommand("gamma", "Vandermonde ratio table and Gamma_r");
    unsigned ga_r = 0;
    std::string ga_out;
    ga->add_option("--r", ga_r, "odd prime")->required();
    ga->add_option("--out", ga_out, "output file");

    auto* zh = app.add_subcommand("zhang", "finite-field verification of the square-submatrix statement");
    unsigned zh_r = 0;
    u64 zh_p = 0;
    bool zh_waive = false;
    std::string zh_out;
    zh->add_option("--r", zh_r, "odd prime r")->required();
    zh->add_option("--p", zh_p, "odd prime p, primitive mod r")->required();
    zh->add_flag("--waive-gamma", zh_waive, "exploratory run below the Gamma_r bound");
    zh->add_option("--out", zh_out, "output file");

    auto* un = app.add_subcommand("uncertainty", "layered support feasibility sweep on Z_r x Z_m");
    unsigned un_r = 0, un_m = 0;
    u64 un_samples = 0, un_seed = 0, un_ceiling = 10000000;
    bool un_exhaustive = false;
    std::string un_out, un_screen = "auto";
    un->add_option("--r", un_r, "layer count r")->required();
    un->add_option("--m", un_m, "layer size m")->required();
    un->add_flag("--exhaustive", un_exhaustive, "sweep all layered pairs (default)");
    un->add_option("--samples", un_samples, "random sample count");
    un->add_option("--seed", un_seed, "sampling seed");
    un->add_option("--screen", un_screen, "auto | off")->check(CLI::IsMember({"auto", "off"}));
    un->add_option("--max-class-size", un_ceiling, "exhaustive ceiling");
    un->add_option("--out", un_out, "output file");

    auto* ja = app.add_subcommand("jacobi", "complementary-minor identity trials");
    unsigned ja_n = 0;
    u64 ja_trials = 200, ja_seed = 7;
    std::string ja_out;
    ja->add_option("--n", ja_n, "matrix order")->required();
    ja->add_option("--trials", ja_trials, "number of random (I, J) pairs");
    ja->add_option("--seed", ja_seed, "trial seed");
    ja->add_option("--out", ja_out, "output file");

    auto* re = app.add_subcommand("reduce", "image of an element under the quotient map");
    unsigned re_n = 0, re_p = 0;
    std::string re_elem, re_out;
    re->add_option("--n", re_n, "cyclotomic modulus")->required();
    re->add_option("--p", re_p, "odd prime p with <1 - zeta_p> prime")->required();
    re->add_option("element", re_elem, "element in the z grammar, e.g. \"1 - z^3\"")->required();
    re->add_option("--out", re_out, "output file");

    auto* no = app.add_subcommand("norm", "field norm of an element of Q(zeta_n)");
    unsigned no_n = 0;
    std::string no_elem, no_out;
    no->add_option("--n", no_n, "cyclotomic modulus")->required();
    no->add_option("element", no_elem, "element in the z grammar")->required();
    no->add_option("--out", no_out, "output file");

    auto* va = app.add_subcommand("valuation", "valuation at 1 - zeta_p");
    unsigned va_n = 0, va_p = 0;
    std::string va_elem, va_out;
    va->add_option("--n", va_n, "cyclotomic modulus")->required();
    va->add_option("--p", va_p, "odd prime factor of n")->required();
    va->add_option("element", va_elem, "element in the z grammar")->required();
    va->add_option("--out", va_out, "output file");

    auto* cr = app.add_subcommand("crt", "index splitting and layer decomposition");
    unsigned cr_n = 0, cr_r = 0;
    long cr_split_i = -1;
    std::string cr_join_s, cr_members, cr_out;
    cr->add_option("--n", cr_n, "modulus")->required();
    cr->add_option("--r", cr_r, "layer modulus")->required();
    cr->add_option("--split", cr_split_i, "index to split");
    cr->add_option("--join", cr_join_s, "pair a,b to join");
    cr->add_option("--decompose", cr_members, "members to decompose, comma separated");
    cr->add_option("--out", cr_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*mc) {
            CampaignSpec spec;
            spec.n = mc_n;
            spec.mode = campaign_mode_from_string(mc_mode);
            spec.layer_r = mc_r;
            spec.min_size = mc_min;
            spec.max_size = mc_max;
            if (mc_samples > 0) {
                spec.sampling.exhaustive = false;
                spec.sampling.count = mc_samples;
                spec.sampling.seed = mc_seed;
            }
            spec.screening = mc_screen == "auto";
            spec.single_I = parse_index_list(mc_I);
            spec.single_J = parse_index_list(mc_J);
            spec.max_class_size = mc_ceiling;
            spec.jobs = mc_jobs;
            (void)mc_exhaustive;
            return run_minor_check(spec, mc_resume, mc_halt, mc_out);
        }
        if (*ga) {
            write_output(to_json(gamma_capital(ga_r)), ga_out);
            return 0;
        }
        if (*zh) {
            ZhangReport report = zhang_verify(zh_r, zh_p, zh_waive);
            write_output(to_json(report), zh_out);
            return report.singular.empty() ? 0 : 1;
        }
        if (*un) {
            (void)un_exhaustive;
            if (un_samples == 0) {
                FeasibilityResult result =
                    feasibility_search(un_r, un_m, un_ceiling, un_screen == "auto");
                write_output(feasibility_to_json(un_r, un_m, result), un_out);
                return result.found ? 1 : 0;
            }
            // Sampled sweep; singularity is transpose-symmetric, so the
            // campaign stream decides and the witness is recomputed in the
            // transform orientation.
            GroupContext g(un_r, un_m);
            CampaignSpec spec;
            spec.n = g.n;
            spec.mode = un_r == 1 ? CampaignMode::all_square : CampaignMode::layered;
            spec.layer_r = un_r == 1 ? 0 : un_r;
            spec.screening = un_screen == "auto";
            spec.sampling.exhaustive = false;
            spec.sampling.count = un_samples;
            spec.sampling.seed = un_seed;
            spec.max_class_size = un_ceiling;
            CampaignReport report = run_campaign(spec);
            FeasibilityResult result;
            result.pairs_checked = report.counts.checked;
            if (!report.singular_findings.empty()) {
                const Finding& f = report.singular_findings.front();
                result.found = true;
                result.I = f.I;
                result.J = f.J;
                result.witness = uncertainty_kernel_witness(un_r, un_m, f.I, f.J);
            }
            write_output(feasibility_to_json(un_r, un_m, result), un_out);
            return result.found ? 1 : 0;
        }
        if (*ja) {
            if (ja_n < 2) throw std::invalid_argument("jacobi: n must be >= 2");
            auto ctx = make_cyclotomic_context(ja_n);
            Lcg64 rng(ja_seed);
            json trials = json::array();
            bool all_equal = true;
            for (u64 t = 0; t < ja_trials; ++t) {
                unsigned k = 1 + static_cast<unsigned>(rng.below(ja_n - 1));
                Int c = binomial(ja_n, k);
                auto I = unrank_combination(
                    ja_n, k, Int(static_cast<unsigned long>(rng.below(c.get_ui()))));
                auto J = unrank_combination(
                    ja_n, k, Int(static_cast<unsigned long>(rng.below(c.get_ui()))));
                JacobiCheck check = jacobi_check(ctx, I, J);
                json jt;
                jt["I"] = I;
                jt["J"] = J;
                jt["lhs"] = to_string(check.lhs);
                jt["rhs"] = to_string(check.rhs);
                jt["equal"] = check.equal;
                trials.push_back(jt);
                all_equal = all_equal && check.equal;
            }
            json j;
            j["n"] = ja_n;
            j["seed"] = ja_seed;
            j["trials"] = trials;
            j["all_equal"] = all_equal;
            write_output(j, ja_out);
            return all_equal ? 0 : 1;
        }
        if (*re) {
            auto ctx = make_cyclotomic_context(re_n);
            ReductionHom hom(ctx, re_p);
            CycElem elem = parse_cyc(ctx, re_elem);
            FFElem image = hom(elem);
            json j;
            j["n"] = re_n;
            j["p"] = re_p;
            j["m"] = hom.m();
            j["element"] = to_string(elem);
            j["target"] = json{{"p", hom.target()->characteristic()},
                               {"modulus", hom.target()->modulus()}};
            j["image"] = to_string(image);
            j["image_coeffs"] = image.coeffs();
            write_output(j, re_out);
            return 0;
        }
        if (*no) {
            auto ctx = make_cyclotomic_context(no_n);
            CycElem elem = parse_cyc(ctx, no_elem);
            json j;
            j["n"] = no_n;
            j["element"] = to_string(elem);
            j["norm"] = to_decimal(cyc_norm(elem));
            write_output(j, no_out);
            return 0;
        }
        if (*va) {
            auto ctx = make_cyclotomic_context(va_n);
            CycElem elem = parse_cyc(ctx, va_elem);
            json j;
            j["n"] = va_n;
            j["p"] = va_p;
            j["element"] = to_string(elem);
            j["valuation"] = cyc_valuation(elem, va_p);
            write_output(j, va_out);
            return 0;
        }
        if (*cr) {
            CrtContext ctx(cr_n, cr_r);
            json j;
            j["n"] = cr_n;
            j["r"] = cr_r;
            j["m"] = ctx.m;
            if (cr_split_i >= 0) {
                CrtPair pair = crt_split(ctx, static_cast<unsigned>(cr_split_i));
                j["split"] = json{{"i", cr_split_i}, {"a", pair.a}, {"b", pair.b}};
            }
            if (!cr_join_s.empty()) {
                auto parts = parse_index_list(cr_join_s);
                if (parts.size() != 2) throw std::invalid_argument("crt --join expects a,b");
                j["join"] = json{{"a", parts[0]},
                                 {"b", parts[1]},
                                 {"i", crt_join(ctx, {parts[0], parts[1]})}};
            }
            if (!cr_members.empty()) {
                LayeredIndexSet set = decompose(ctx, parse_index_list(cr_members));
                json layers = json::array();
                for (const auto& layer : set.layers) layers.push_back(layer);
                j["decompose"] = json{{"members", set.members}, {"layers", layers}};
            }
            write_output(j, cr_out);
            return 0;
        }
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
