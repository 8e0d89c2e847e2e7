// symprime: command-line front end for the symprime library.
//
// Exit codes: 0 success, 2 usage error, 3 resource or sieve-bound error,
// 1 anything else. Errors are reported as a single line on stderr.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "symprime/report.hpp"
#include "symprime/symprime.hpp"

namespace {

using namespace symprime;
using json = nlohmann::ordered_json;

constexpr int exit_usage = 2;
constexpr int exit_resource = 3;

struct RunConfig {
    bool include_two = false;
    std::string format = "csv";
    std::string cache_dir;
    unsigned threads = 0;
    bool quiet = false;

    Convention convention() const { return {include_two}; }

    std::optional<std::filesystem::path> cache() const {
        if (!cache_dir.empty()) return std::filesystem::path(cache_dir);
        return cache_directory_from_env();
    }

    BuildOptions build_options(bool verbose) const {
        BuildOptions opts;
        opts.threads = threads;
        if (verbose && !quiet)
            opts.progress = [](u64 done, u64 total) {
                if (done == total || done % 64 == 0) std::fprintf(stderr, "sieve: segment %llu/%llu\n",
                                                                  (unsigned long long)done, (unsigned long long)total);
            };
        return opts;
    }

    CountOptions count_options(bool verbose) const {
        CountOptions opts;
        opts.threads = threads;
        if (verbose && !quiet)
            opts.progress = [](u64 done, u64 total) {
                if (done == total || done % 16 == 0) std::fprintf(stderr, "count: block %llu/%llu\n",
                                                                  (unsigned long long)done, (unsigned long long)total);
            };
        return opts;
    }
};

PrimalityTable primality_for(const RunConfig& cfg, u64 bound, bool verbose = false) {
    return load_or_build_primality(std::max<u64>(bound, 2), cfg.cache(), cfg.build_options(verbose));
}

Tables tables_for(const RunConfig& cfg, u64 bound, u64 factor_bound) {
    return Tables{primality_for(cfg, bound), FactorTable::build(std::max<u64>(factor_bound, 2), cfg.build_options(false))};
}

std::vector<LinearForm> parse_forms(const std::vector<std::string>& specs) {
    std::vector<LinearForm> forms;
    for (const auto& s : specs) {
        auto comma = s.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("form '" + s + "' is not of the form g,h");
        std::size_t used_g = 0, used_h = 0;
        i64 g = std::stoll(s.substr(0, comma), &used_g);
        i64 h = std::stoll(s.substr(comma + 1), &used_h);
        if (used_g != comma || used_h != s.size() - comma - 1)
            throw std::invalid_argument("form '" + s + "' is not of the form g,h");
        forms.push_back({g, h});
    }
    return forms;
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

void print_set(const std::optional<GcdDiffSet>& set, const RunConfig& cfg, json meta) {
    if (cfg.format == "json") {
        meta["set"] = set ? json(set->elements) : json(nullptr);
        if (set) meta["verified"] = verify_gcd_diff_set(set->elements);
        print_json(meta);
        return;
    }
    if (!set) {
        std::cout << "none\n";
        return;
    }
    for (std::size_t i = 0; i < set->elements.size(); ++i) std::cout << (i ? "," : "") << set->elements[i];
    std::cout << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"Symmetric primes: counting, graph analysis, gcd-difference sets and diagnostics"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* cmd, bool with_convention) {
        if (with_convention) {
            auto* two = cmd->add_flag("--include-two", cfg.include_two, "Admit 2 as a vertex, so {2,3} counts as a pair");
            cmd->add_flag_callback("--odd-only", [&] { cfg.include_two = false; }, "Odd primes only (default)")
                ->excludes(two);
        }
        cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
        cmd->add_option("--cache-dir", cfg.cache_dir, std::string("Sieve cache directory (default: $") + cache_dir_env + ")");
        cmd->add_flag("--quiet", cfg.quiet, "No progress output");
    };

    u64 max_n = 0, x = 0, p = 0, q = 0, limit = 0, bound = 0, min_element = 0;
    std::size_t m = 0, k = 0;
    bool maximal = false, drop_isolated = false;
    std::string edges_path;
    std::vector<u64> elements;
    std::vector<std::string> form_specs;
    std::vector<i64> b_values;
    i64 g_value = 0;

    auto* tab = app.add_subcommand("tabulate", "S(p_n) survey rows at n = 10, 100, ..., max_n");
    tab->add_option("--max-n", max_n, "Largest prime index")->required()->check(CLI::Range(u64{1}, u64{1} << 40));
    add_common(tab, true);

    auto* count = app.add_subcommand("count", "S(x) for a single x");
    count->add_option("--x", x, "Upper limit")->required()->check(CLI::Range(u64{0}, max_input / 2));
    add_common(count, true);

    auto* part = app.add_subcommand("partners", "Partner certificates of a prime");
    part->add_option("--p", p, "Prime")->required()->check(CLI::Range(u64{2}, max_input / 2));
    add_common(part, true);

    auto* graph_cmd = app.add_subcommand("graph", "Symmetric-pair graph on primes <= N: components JSON, edge CSV");
    graph_cmd->add_option("--limit", limit, "N")->required()->check(CLI::Range(u64{2}, u64{1} << 34));
    graph_cmd->add_option("--edges", edges_path, "Write adjacency CSV to this file ('-' for stdout)");
    graph_cmd->add_flag("--drop-isolated", drop_isolated, "Leave asymmetric (isolated) primes out of the summary");
    add_common(graph_cmd, true);

    auto* cliques = app.add_subcommand("cliques", "K_m subgraphs among primes <= N");
    cliques->add_option("--m", m, "Clique size")->required()->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    cliques->add_option("--limit", limit, "N")->required()->check(CLI::Range(u64{2}, u64{1} << 34));
    cliques->add_flag("--maximal", maximal, "Only maximal cliques of size >= m");
    add_common(cliques, true);

    auto* msym = app.add_subcommand("msym", "Number of m-symmetric primes <= x");
    msym->add_option("--m", m, "Clique size")->required()->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    msym->add_option("--x", x, "Upper limit")->required()->check(CLI::Range(u64{0}, u64{1} << 33));
    add_common(msym, true);

    auto* sets = app.add_subcommand("sets", "Smallest k-element gcd-difference set with max <= bound");
    sets->add_option("--k", k, "Set size")->required()->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    sets->add_option("--bound", bound, "Largest element allowed")->required()->check(CLI::Range(u64{1}, u64{1} << 24));
    add_common(sets, false);

    auto* verify = app.add_subcommand("verify-set", "Check gcd(a,b) = |a-b| for every pair");
    verify->add_option("elements", elements, "Positive integers")->required();
    add_common(verify, false);

    auto* psets = app.add_subcommand("prime-sets", "Smallest k primes > min with pairwise gcd(p-1,q-1) = |p-q|");
    psets->add_option("--k", k, "Set size")->required()->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    psets->add_option("--min", min_element, "Every member must exceed this");
    psets->add_option("--bound", bound, "Largest prime searched")->required()->check(CLI::Range(u64{2}, u64{1} << 32));
    add_common(psets, false);

    auto* adm = app.add_subcommand("admissible", "Admissibility of linear forms g*t+h");
    adm->add_option("--form", form_specs, "Form as g,h (repeat)")->required();
    add_common(adm, false);

    auto* mt = app.add_subcommand("mt-check", "Positivity, determinant and admissibility conditions on forms");
    mt->add_option("--form", form_specs, "Form as g,h (repeat)")->required();
    add_common(mt, false);

    auto* bftb = app.add_subcommand("bftb-check", "Distinct b_j, admissible {t+b_j}, gcd(g, prod b_j) = 1");
    bftb->add_option("--b", b_values, "Shifts b_j")->required();
    bftb->add_option("--g", g_value, "Modulus g")->required();
    add_common(bftb, false);

    auto* coprime = app.add_subcommand("coprime-check", "gcd(prod(b_i-1), prod b_j) = 1 for a prime gcd-difference set");
    coprime->add_option("--b", elements, "Odd primes")->required();
    add_common(coprime, false);

    auto* diag = app.add_subcommand("diag", "Proof-profile statistics at x");
    diag->add_option("--x", x, "Upper limit")->required()->check(CLI::Range(u64{16}, u64{1} << 33));
    add_common(diag, true);

    auto* eis = app.add_subcommand("eisenstein", "Lattice counts S(q,p), S(p,q) and Legendre symbols");
    eis->add_option("--p", p, "Odd prime")->required();
    eis->add_option("--q", q, "Odd prime")->required();
    add_common(eis, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    const Convention conv = cfg.convention();
    const bool csv = cfg.format == "csv";

    if (tab->parsed()) {
        const bool verbose = max_n >= 10'000'000;
        const u64 need = required_primality_bound(PrimalityTable::nth_prime_upper_estimate(max_n));
        auto primes = primality_for(cfg, need, verbose);
        auto rows = tabulate(primes, max_n, conv, cfg.count_options(verbose));
        if (csv) {
            std::cout << "# convention=" << conv.name() << '\n' << survey_csv_header << '\n';
            for (const auto& r : rows) std::cout << survey_csv_row(r) << '\n';
        } else {
            json out = {{"convention", conv.name()}, {"eta", eta()}, {"rows", json::array()}};
            for (const auto& r : rows) out["rows"].push_back(to_json(r));
            print_json(out);
        }
    } else if (count->parsed()) {
        auto primes = primality_for(cfg, required_primality_bound(x), x >= 100'000'000);
        u64 s = count_symmetric(primes, x, conv, cfg.count_options(x >= 100'000'000));
        u64 pi = primes.prime_count(x);
        if (csv) {
            std::cout << "# convention=" << conv.name() << "\nx,pi,S,ratio\n"
                      << x << ',' << pi << ',' << s << ',' << (pi ? fixed4_ratio(s, pi) : "0.0000") << '\n';
        } else {
            print_json({{"convention", conv.name()}, {"x", x}, {"pi", pi}, {"S", s}});
        }
    } else if (part->parsed()) {
        auto tables = tables_for(cfg, required_primality_bound(p), p);
        auto certs = partners(tables, p, conv);
        auto best = is_symmetric(tables, p, conv);
        if (csv) {
            std::cout << "# convention=" << conv.name() << "\np,d,q,direction\n";
            for (const auto& c : certs) std::cout << c.p << ',' << c.d << ',' << c.q << ',' << to_string(c.direction) << '\n';
        } else {
            json out = {{"convention", conv.name()}, {"p", p}, {"symmetric", best.has_value()}};
            out["certificate"] = best ? to_json(*best) : json(nullptr);
            out["partners"] = json::array();
            for (const auto& c : certs) out["partners"].push_back(to_json(c));
            print_json(out);
        }
    } else if (graph_cmd->parsed()) {
        auto tables = tables_for(cfg, limit, limit);
        auto g = build_graph(tables, limit, conv, cfg.threads);
        if (edges_path == "-") {
            write_adjacency_csv(std::cout, g);
        } else {
            if (!edges_path.empty()) {
                std::ofstream out(edges_path);
                if (!out) throw std::runtime_error("cannot write " + edges_path);
                write_adjacency_csv(out, g);
            }
            print_json(component_report(g, !drop_isolated));
        }
    } else if (cliques->parsed()) {
        auto tables = tables_for(cfg, limit, limit);
        auto g = build_graph(tables, limit, conv, cfg.threads);
        auto found = find_cliques(g, m, maximal);
        if (csv) {
            std::cout << "# convention=" << conv.name() << " limit=" << limit << '\n';
            for (const auto& c : found) {
                for (std::size_t i = 0; i < c.members.size(); ++i) std::cout << (i ? "," : "") << c.members[i];
                std::cout << (g.is_boundary(c.members.back()) ? ",boundary\n" : "\n");
            }
        } else {
            json out = {{"convention", conv.name()}, {"limit", limit}, {"m", m}, {"maximal_only", maximal},
                        {"cliques", json::array()}};
            for (const auto& c : found)
                out["cliques"].push_back({{"members", c.members}, {"boundary", g.is_boundary(c.members.back())}});
            print_json(out);
        }
    } else if (msym->parsed()) {
        const u64 window = required_primality_bound(x);
        auto tables = tables_for(cfg, window, window);
        auto g = build_graph(tables, window, conv, cfg.threads);
        u64 c = m_symmetric_count(g, m, x);
        if (csv) std::cout << "# convention=" << conv.name() << "\nm,x,count\n" << m << ',' << x << ',' << c << '\n';
        else print_json({{"convention", conv.name()}, {"m", m}, {"x", x}, {"count", c}});
    } else if (sets->parsed()) {
        print_set(search_gcd_diff_set(k, bound), cfg, {{"k", k}, {"bound", bound}});
    } else if (verify->parsed()) {
        bool ok = verify_gcd_diff_set(elements);
        if (csv) std::cout << (ok ? "valid" : "invalid") << '\n';
        else print_json({{"elements", elements}, {"valid", ok}});
    } else if (psets->parsed()) {
        auto tables = tables_for(cfg, bound, bound);
        auto set = search_prime_gcd_diff_set(tables, k, min_element, bound);
        if (cfg.format == "json") {
            json out = {{"k", k}, {"min", min_element}, {"bound", bound}};
            out["set"] = set ? json(set->elements) : json(nullptr);
            print_json(out);
        } else {
            print_set(set, cfg, {});
        }
    } else if (adm->parsed()) {
        auto forms = parse_forms(form_specs);
        auto rep = is_admissible(forms);
        if (csv) std::cout << (rep.admissible ? "admissible" : "not admissible") << '\n';
        else print_json(to_json(rep));
    } else if (mt->parsed()) {
        auto rep = maynard_tao_hypothesis_check(parse_forms(form_specs));
        if (csv) std::cout << (rep.passed ? "pass" : "fail") << '\n';
        else print_json(to_json(rep));
    } else if (bftb->parsed()) {
        auto rep = bftb_input_check(b_values, g_value);
        if (csv) std::cout << (rep.passed ? "pass" : "fail") << '\n';
        else print_json(to_json(rep));
    } else if (coprime->parsed()) {
        bool ok = coprimality_lemma_check(elements);
        if (csv) std::cout << (ok ? "coprime" : "not coprime") << '\n';
        else print_json({{"b", elements}, {"coprime", ok}});
    } else if (diag->parsed()) {
        const u64 window = required_primality_bound(x);
        auto primes = primality_for(cfg, window);
        auto prof = proof_profile(primes, x);
        u64 s = count_symmetric(primes, x, conv, cfg.count_options(false));
        json out = to_json(prof);
        out["convention"] = conv.name();
        out["symmetric_count"] = s;
        out["s1_fraction"] = double(prof.s1_count) / double(prof.prime_count);
        out["omega_excess_fraction"] = double(prof.omega_excess) / double(prof.prime_count);
        out["symmetric_fraction"] = double(s) / double(prof.prime_count);
        out["model"] = model_value(x);
        print_json(out);
    } else if (eis->parsed()) {
        u64 below = eisenstein_count(q, p), above = eisenstein_count(p, q);
        json out = {{"p", p}, {"q", q}, {"S(q,p)", below}, {"S(p,q)", above},
                    {"legendre(q,p)", legendre(i64(q), p)}, {"legendre(p,q)", legendre(i64(p), q)},
                    {"equal_counts", below == above}, {"gcd_condition", std::gcd(p - 1, q - 1) == (p > q ? p - q : q - p)}};
        print_json(out);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "symprime: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::out_of_range& e) {
        std::cerr << "symprime: " << e.what() << '\n';
        return exit_resource;
    } catch (const resource_error& e) {
        std::cerr << "symprime: " << e.what() << '\n';
        return exit_resource;
    } catch (const std::exception& e) {
        std::cerr << "symprime: " << e.what() << '\n';
        return 1;
    }
}
