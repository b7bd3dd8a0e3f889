#include <chrono>
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

#include "fpl/cache.hpp"
#include "fpl/conjectures.hpp"
#include "fpl/fpl_enum.hpp"
#include "fpl/link_pattern.hpp"
#include "fpl/polya.hpp"
#include "fpl/tl_ground.hpp"

namespace {

using nlohmann::json;

constexpr int kForcedLimit = 1000;

enum class Format { kText, kCsv, kJson };

struct Globals {
    bool json = false;
    bool csv = false;
    std::string cache_dir;
    bool no_cache = false;
    bool force = false;
    int threads = 1;
    std::string manifest;

    Format format() const { return json ? Format::kJson : csv ? Format::kCsv : Format::kText; }
};

// A command fills the stream and reports whether every check passed.
struct Outcome {
    std::ostringstream out;
    bool ok = true;
    int cache_hits = 0;
};

std::string csv_row(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        s += k ? "," : "";
        if (cells[k].find_first_of(",\"\n") != std::string::npos) {
            s += '"';
            for (char c : cells[k]) s += c == '"' ? std::string("\"\"") : std::string(1, c);
            s += '"';
        } else {
            s += cells[k];
        }
    }
    return s + "\n";
}

std::string dyck(const fpl::LinkPattern& p) { return fpl::pattern_to_dyck(p).str(); }

fpl::EnumerationOptions enum_options(const Globals& g) {
    fpl::EnumerationOptions o;
    o.threads = std::max(1, g.threads);
    if (g.force) o.max_n = kForcedLimit;
    return o;
}

fpl::StoreOptions store_options(const Globals& g) {
    fpl::StoreOptions o;
    if (!g.no_cache) o.cache_dir = g.cache_dir.empty() ? fpl::default_cache_dir() : std::filesystem::path(g.cache_dir);
    o.ground.threads = std::max(1, g.threads);
    if (g.force) {
        o.ground.max_full_n = kForcedLimit;
        o.ground.max_reduced_n = kForcedLimit;
    }
    return o;
}

// ---------------------------------------------------------------------------

struct CountArgs {
    int n = 0;
    bool total = false;
    bool by_pattern = false;
    bool by_orbit = false;
    bool asm_list = false;
};

void cmd_count(const CountArgs& a, const Globals& g, Outcome& o) {
    const auto opt = enum_options(g);
    if (a.asm_list) {
        fpl::check_enumeration_guard(a.n, opt);
        std::vector<fpl::AsmMatrix> mats;
        for_each_fpl(a.n, opt.parity, [&](const fpl::FplConfiguration& c) { mats.push_back(fpl::fpl_to_asm(c)); });
        std::sort(mats.begin(), mats.end());
        if (g.format() == Format::kJson) {
            json arr = json::array();
            for (const auto& m : mats) arr.push_back(m.str());
            o.out << json{{"n", a.n}, {"count", std::to_string(mats.size())}, {"asms", arr}}.dump(2) << "\n";
        } else {
            if (g.format() == Format::kCsv) o.out << "asm\n";
            for (const auto& m : mats) o.out << (g.format() == Format::kCsv ? csv_row({m.str()}) : m.str() + "\n");
        }
        return;
    }
    if (a.by_pattern || a.by_orbit) {
        const auto counts = fpl::count_by_pattern(a.n, opt);
        const fpl::OrbitIndex index(a.n, false);
        std::uint64_t sum = 0;
        std::vector<std::vector<std::string>> rows;
        if (a.by_pattern) {
            for (const auto& p : fpl::enumerate_link_patterns(a.n)) {
                const auto it = counts.find(p);
                const std::uint64_t c = it == counts.end() ? 0 : it->second;
                sum += c;
                rows.push_back({dyck(p), dyck(index.orbits()[index.orbit_of(p)].representative), std::to_string(c)});
            }
        } else {
            std::map<int, std::uint64_t> per_orbit;
            for (const auto& [p, c] : counts) {
                const int k = index.orbit_of(p);
                per_orbit.emplace(k, c);
                sum += c;
            }
            for (const auto& [k, c] : per_orbit)
                rows.push_back({dyck(index.orbits()[k].representative), std::to_string(index.orbits()[k].size()),
                                std::to_string(c)});
        }
        const std::vector<std::string> header =
            a.by_pattern ? std::vector<std::string>{"pattern_dyck_word", "orbit_representative", "count"}
                         : std::vector<std::string>{"orbit_representative", "orbit_size", "count"};
        if (g.format() == Format::kJson) {
            json arr = json::array();
            for (const auto& r : rows) arr.push_back({{header[0], r[0]}, {header[1], r[1]}, {header[2], r[2]}});
            o.out << json{{"n", a.n}, {"rows", arr}, {"total", std::to_string(sum)}}.dump(2) << "\n";
        } else if (g.format() == Format::kCsv) {
            o.out << csv_row(header);
            for (const auto& r : rows) o.out << csv_row(r);
        } else {
            for (const auto& r : rows) o.out << r[0] << "  " << r[1] << "  " << r[2] << "\n";
            o.out << "total " << sum << "\n";
        }
        o.ok = fpl::BigInt(static_cast<unsigned long>(sum)) == fpl::a_total(a.n);
        return;
    }
    const std::uint64_t c = fpl::count_fpl(a.n, opt);
    const fpl::BigInt expected = fpl::a_total(a.n);
    o.ok = fpl::BigInt(static_cast<unsigned long>(c)) == expected;
    if (g.format() == Format::kJson)
        o.out << json{{"n", a.n}, {"count", std::to_string(c)}, {"a_total", fpl::to_string(expected)}}.dump(2) << "\n";
    else if (g.format() == Format::kCsv)
        o.out << csv_row({"n", "count", "a_total"}) << csv_row({std::to_string(a.n), std::to_string(c), fpl::to_string(expected)});
    else
        o.out << c << "\n";
}

// ---------------------------------------------------------------------------

struct GroundArgs {
    int n = 0;
    bool full = false;
};

void cmd_ground(const GroundArgs& a, const Globals& g, Outcome& o) {
    fpl::GroundStateStore store(store_options(g));
    const fpl::Basis basis = a.full ? fpl::Basis::kFull : fpl::Basis::kReduced;
    const fpl::GroundState& gs = store.get(a.n, basis);
    o.cache_hits = store.cache_hits();
    const fpl::BigRational sum = gs.weighted_sum();
    const fpl::BigInt expected = fpl::a_total(a.n);
    o.ok = gs.all_integer() && gs.all_positive() && sum == fpl::BigRational(expected);
    if (g.format() == Format::kJson) {
        json rows = json::array();
        for (std::size_t k = 0; k < gs.size(); ++k)
            rows.push_back({{"pattern", dyck(gs.labels()[k])},
                            {"orbit_size", gs.orbit_sizes()[k]},
                            {"component", fpl::to_string(gs.components()[k])}});
        o.out << json{{"n", a.n},
                      {"basis", fpl::to_string(basis)},
                      {"rows", rows},
                      {"weighted_sum", fpl::to_string(sum)},
                      {"a_total", fpl::to_string(expected)}}
                     .dump(2)
              << "\n";
        return;
    }
    if (g.format() == Format::kCsv) {
        o.out << csv_row({"pattern", "orbit_size", "component"});
        for (std::size_t k = 0; k < gs.size(); ++k)
            o.out << csv_row({dyck(gs.labels()[k]), std::to_string(gs.orbit_sizes()[k]), fpl::to_string(gs.components()[k])});
        o.out << csv_row({"weighted_sum", fpl::to_string(sum), fpl::to_string(expected)});
        return;
    }
    std::size_t width = 7;
    for (const auto& p : gs.labels()) width = std::max<std::size_t>(width, static_cast<std::size_t>(p.points()));
    for (std::size_t k = 0; k < gs.size(); ++k) {
        const std::string w = dyck(gs.labels()[k]);
        o.out << w << std::string(width - w.size() + 2, ' ') << gs.orbit_sizes()[k] << "  "
              << fpl::to_string(gs.components()[k]) << "\n";
    }
    o.out << "weighted sum " << fpl::to_string(sum) << (o.ok ? " = " : " != ") << "A_" << a.n << " = "
          << fpl::to_string(expected) << "\n";
}

// ---------------------------------------------------------------------------

void cmd_orbits(int n, const Globals& g, Outcome& o) {
    if (n > 12 && !g.force) throw fpl::GuardRefusal("orbit listing at n=" + std::to_string(n) + " refused", 12);
    const fpl::OrbitIndex index(n, false);
    const auto series = fpl::unrooted_tree_series(std::max(n, 1));
    o.ok = series[n] == fpl::BigRational(static_cast<long>(index.orbits().size()));
    if (g.format() == Format::kJson) {
        json rows = json::array();
        for (const auto& orb : index.orbits()) rows.push_back({{"representative", dyck(orb.representative)}, {"size", orb.size()}});
        o.out << json{{"n", n},
                      {"orbits", rows},
                      {"orbit_count", std::to_string(index.orbits().size())},
                      {"pattern_count", std::to_string(index.pattern_count())},
                      {"series_coefficient", fpl::to_string(series[n])}}
                     .dump(2)
              << "\n";
        return;
    }
    if (g.format() == Format::kCsv) {
        o.out << csv_row({"representative", "size"});
        for (const auto& orb : index.orbits()) o.out << csv_row({dyck(orb.representative), std::to_string(orb.size())});
        return;
    }
    for (const auto& orb : index.orbits()) o.out << dyck(orb.representative) << "  " << orb.size() << "\n";
    o.out << index.orbits().size() << " orbits, " << index.pattern_count() << " patterns; series coefficient "
          << fpl::to_string(series[n]) << "\n";
}

void cmd_series(int order, const Globals&, Outcome& o) {
    const auto t = fpl::unrooted_tree_series(order);
    json arr = json::array();
    for (int k = 1; k <= order; ++k) arr.push_back(fpl::to_string(t[k]));
    o.out << arr.dump() << "\n";
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    int n_max = 8;
    std::vector<std::string> only;
};

void cmd_verify(const VerifyArgs& a, const Globals& g, Outcome& o) {
    fpl::GroundStateStore store(store_options(g));
    const auto reports = fpl::verify_all(a.n_max, store, a.only, g.threads);
    o.cache_hits = store.cache_hits();
    for (const auto& r : reports) o.ok = o.ok && r.pass();
    if (g.format() == Format::kJson) {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(fpl::to_json(r));
        o.out << json{{"n_max", a.n_max}, {"reports", arr}, {"pass", o.ok}}.dump(2) << "\n";
        return;
    }
    if (g.format() == Format::kCsv) {
        o.out << csv_row({"conjecture", "params", "formula_value", "data_value", "status", "note"});
        for (const auto& r : reports)
            for (const auto& c : r.cases)
                o.out << csv_row({r.conjecture, c.params, c.formula_value, c.data_value, fpl::to_string(c.status), c.note});
        return;
    }
    for (const auto& r : reports) {
        o.out << (r.pass() ? "PASS " : "FAIL ") << r.conjecture << "  [" << r.range << "]  "
              << r.count(fpl::CaseStatus::kMatch) << " match, " << r.count(fpl::CaseStatus::kMismatch) << " mismatch, "
              << r.count(fpl::CaseStatus::kSkipped) << " skipped\n";
        for (const auto& c : r.cases) {
            if (c.status == fpl::CaseStatus::kMatch) continue;
            o.out << "    " << fpl::to_string(c.status) << " " << c.params;
            if (c.status == fpl::CaseStatus::kMismatch) o.out << ": formula " << c.formula_value << ", data " << c.data_value;
            if (!c.note.empty()) o.out << " (" << c.note << ")";
            o.out << "\n";
        }
        for (const auto& note : r.notes) o.out << "    note: " << note << "\n";
    }
    o.out << (o.ok ? "all checks pass" : "some checks FAIL") << "\n";
}

// ---------------------------------------------------------------------------

struct ExportArgs {
    int n = 0;
    std::string output;
};

// Returns the file written.
std::filesystem::path cmd_export(const ExportArgs& a, const Globals& g, Outcome& o) {
    const auto counts = fpl::count_by_pattern(a.n, enum_options(g));
    const fpl::OrbitIndex index(a.n, false);
    std::ostringstream csv;
    csv << csv_row({"pattern_dyck_word", "orbit_representative", "count"});
    std::uint64_t sum = 0;
    for (const auto& p : fpl::enumerate_link_patterns(a.n)) {
        const auto it = counts.find(p);
        const std::uint64_t c = it == counts.end() ? 0 : it->second;
        sum += c;
        csv << csv_row({dyck(p), dyck(index.orbits()[index.orbit_of(p)].representative), std::to_string(c)});
    }
    o.ok = fpl::BigInt(static_cast<unsigned long>(sum)) == fpl::a_total(a.n);
    const std::filesystem::path path = a.output.empty() ? "fpl-counts-n" + std::to_string(a.n) + ".csv" : a.output;
    fpl::atomic_write(path, csv.str());
    o.out << csv.str();
    return path;
}

json manifest(const std::string& sub, const std::vector<std::string>& argv, double seconds, const Outcome& o) {
    return {{"tool", "fplcount"},
            {"version", FPLCOUNT_VERSION},
            {"subcommand", sub},
            {"arguments", argv},
            {"wall_time_seconds", seconds},
            {"cache_hits", o.cache_hits},
            {"output_sha256", fpl::sha256_hex(o.out.str())},
            {"pass", o.ok}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fully packed loops, link-pattern ground states and their conjectured closed forms"};
    app.set_version_flag("--version", std::string(FPLCOUNT_VERSION));
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "JSON output");
    app.add_flag("--csv", g.csv, "CSV output (comma separated, header row)");
    app.add_option("--cache-dir", g.cache_dir, std::string("ground-state cache directory (default $") + fpl::kCacheDirEnv +
                                                   ", else the per-user data directory)");
    app.add_flag("--no-cache", g.no_cache, "neither read nor write the ground-state cache");
    app.add_flag("--force", g.force, "lift the size guards");
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1, 256));
    app.add_option("--manifest", g.manifest, "also write a run manifest to this file");

    CountArgs count;
    auto* c = app.add_subcommand("count", "count FPL configurations by exhaustive enumeration");
    c->add_option("--n", count.n, "grid size")->required()->check(CLI::PositiveNumber);
    auto* mode = c->add_option_group("mode");
    mode->add_flag("--total", count.total, "total count (default)");
    mode->add_flag("--by-pattern", count.by_pattern, "count per link pattern");
    mode->add_flag("--by-orbit", count.by_orbit, "count per dihedral orbit");
    mode->add_flag("--asm", count.asm_list, "list the alternating-sign matrices");
    mode->require_option(0, 1);

    GroundArgs ground;
    auto* gr = app.add_subcommand("ground", "exact ground state of the periodic loop Hamiltonian");
    gr->alias("ground-state");
    gr->add_option("--n", ground.n, "system size")->required()->check(CLI::PositiveNumber);
    gr->add_flag("--full", ground.full, "full link-pattern basis instead of orbits");

    int orbit_n = 0;
    auto* ob = app.add_subcommand("orbits", "dihedral orbits of link patterns");
    ob->add_option("--n", orbit_n, "system size")->required()->check(CLI::PositiveNumber);

    int order = 12;
    auto* se = app.add_subcommand("series", "orbit-count generating function coefficients x^1..x^order");
    se->add_option("--order", order, "last power")->check(CLI::Range(1, 400));

    VerifyArgs verify;
    auto* ve = app.add_subcommand("verify", "check the conjectured formulas against exact data");
    ve->add_option("--n-max", verify.n_max, "largest size used")->check(CLI::PositiveNumber);
    ve->add_option("--only", verify.only, "comma-separated check ids")
        ->delimiter(',')
        ->check(CLI::IsMember(fpl::verification_ids()));

    ExportArgs exp;
    auto* ex = app.add_subcommand("export", "write per-pattern counts as CSV, with a manifest alongside");
    ex->add_option("--n", exp.n, "grid size")->required()->check(CLI::PositiveNumber);
    ex->add_option("--output", exp.output, "CSV file (default fpl-counts-n<N>.csv)");

    CLI11_PARSE(app, argc, argv);

    const std::vector<std::string> args(argv + 1, argv + argc);
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    std::string sub;
    try {
        if (*c) {
            sub = "count";
            cmd_count(count, g, o);
        } else if (*gr) {
            sub = "ground";
            cmd_ground(ground, g, o);
        } else if (*ob) {
            sub = "orbits";
            cmd_orbits(orbit_n, g, o);
        } else if (*se) {
            sub = "series";
            cmd_series(order, g, o);
        } else if (*ve) {
            sub = "verify";
            if (verify.n_max > fpl::kDefaultReducedBasisLimit + 1 && !g.force)
                throw fpl::GuardRefusal("verify --n-max " + std::to_string(verify.n_max) + " refused",
                                        fpl::kDefaultReducedBasisLimit + 1);
            cmd_verify(verify, g, o);
        } else if (*ex) {
            sub = "export";
            const auto path = cmd_export(exp, g, o);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            fpl::atomic_write(path.string() + ".manifest.json", manifest(sub, args, secs, o).dump(2) + "\n");
            std::cerr << "wrote " << path.string() << " and " << path.string() << ".manifest.json\n";
            if (!o.ok) std::cerr << "per-pattern counts do not add up to A_" << exp.n << "\n";
            return o.ok ? 0 : 1;
        }
    } catch (const fpl::GuardRefusal& e) {
        std::cerr << "fplcount: " << e.what() << "; pass --force to lift it\n";
        return 2;
    } catch (const fpl::StructuralFailure& e) {
        std::cerr << "fplcount: structural failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "fplcount: " << e.what() << "\n";
        return 2;
    }
    std::cout << o.out.str();
    std::cout.flush();
    if (!g.manifest.empty()) {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        fpl::atomic_write(std::filesystem::absolute(g.manifest), manifest(sub, args, secs, o).dump(2) + "\n");
    }
    return o.ok ? 0 : 1;
}
