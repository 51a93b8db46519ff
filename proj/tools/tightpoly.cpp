// tightpoly: escalation for tight T(n)-universal sums of generalized m-gonal
// numbers, criterion sets, and reproduction of the published tables.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tightpoly.hpp"

namespace {

using namespace tightpoly;

enum Exit : int {
    exit_ok = 0,
    exit_mismatch = 1,
    exit_usage = 2,
    exit_depth_guard = 3,
    exit_io = 4,
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Common {
    RunConfig cfg;
    std::string format = "markdown";
    std::string output;
    std::string json_output;
    std::string cache_dir;
    bool no_cache = false;
    bool quiet = false;
    std::string data_dir;
};

void add_run_options(CLI::App* cmd, Common& c, bool need_mn = true) {
    if (need_mn) {
        cmd->add_option("--m", c.cfg.m, "polygonal order m (>= 3)")->required();
        cmd->add_option("--n", c.cfg.n, "target T(n), n >= 1")->capture_default_str();
    }
    cmd->add_option("--bound", c.cfg.bound, "verification bound for truants")->capture_default_str();
    cmd->add_option("--max-depth", c.cfg.max_depth, "depth guard (default 2n+16)");
    cmd->add_option("--jobs,-j", c.cfg.jobs, "worker threads")->capture_default_str();
    cmd->add_option("--format", c.format, "markdown, csv or json")->capture_default_str();
    cmd->add_option("--output,-o", c.output, "write the formatted result here instead of stdout");
    cmd->add_option("--json", c.json_output, "also write the JSON result to this path");
    cmd->add_option("--cache-dir", c.cache_dir, "truant cache directory (default $TIGHTPOLY_CACHE_DIR or .tightpoly-cache)");
    cmd->add_flag("--no-cache", c.no_cache, "do not read or write the truant cache");
    cmd->add_flag("--quiet,-q", c.quiet, "no progress on stderr");
}

void finalize(Common& c) {
    c.cfg.format = parse_format(c.format);
    if (!c.output.empty()) c.cfg.output = c.output;
    if (!c.json_output.empty()) c.cfg.json_output = c.json_output;
    if (!c.no_cache) c.cfg.cache_dir = c.cache_dir.empty() ? FileTruantCache::default_dir() : std::filesystem::path(c.cache_dir);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write to " + path.string() + " failed");
}

void emit(const Common& c, const std::string& text) {
    if (c.cfg.output) {
        write_file(*c.cfg.output, text);
    } else {
        std::cout << text;
        std::cout.flush();
    }
}

/// Runs escalation for (m, n) with progress and optional cache.
EscalationResult escalate(const Common& c, integer m, integer n) {
    std::unique_ptr<FileTruantCache> cache;
    if (c.cfg.cache_dir) cache = std::make_unique<FileTruantCache>(*c.cfg.cache_dir, m, n, c.cfg.bound);
    EscalationOptions opts;
    opts.max_depth = c.cfg.max_depth;
    opts.jobs = c.cfg.jobs;
    opts.store = cache.get();
    if (!c.quiet) {
        opts.on_level = [m, n](const LevelProgress& p) {
            double rate = p.seconds > 0 ? static_cast<double>(p.computed) / p.seconds : 0.0;
            std::cerr << "[m=" << m << " n=" << n << "] level " << p.k << ": E=" << p.generated << " U=" << p.universal
                      << " A=" << p.active << " NU=" << p.new_universal << " computed=" << p.computed << " ("
                      << static_cast<long long>(rate) << " nodes/s)\n";
        };
    }
    auto started = std::chrono::steady_clock::now();
    EscalationResult r = run_escalation(m, n, c.cfg.bound, opts);
    if (!c.quiet) {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        std::cerr << "[m=" << m << " n=" << n << "] terminated at level " << *r.terminal_depth << " in " << secs << " s";
        if (cache) std::cerr << " (cache hits " << cache->hits() << ")";
        std::cerr << "\n";
    }
    return r;
}

int cmd_escalate(Common& c) {
    c.cfg.validate();
    EscalationResult r;
    try {
        r = escalate(c, c.cfg.m, c.cfg.n);
    } catch (const DepthGuardExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (c.cfg.json_output) write_file(*c.cfg.json_output, to_json(e.partial()).dump(2) + "\n");
        return exit_depth_guard;
    }
    if (c.cfg.json_output) write_file(*c.cfg.json_output, to_json(r).dump(2) + "\n");
    emit(c, emit_candidates(r, c.cfg.format));
    if (!c.quiet && !classified_pair(c.cfg.m, c.cfg.n))
        std::cerr << "note: (m,n)=(" << c.cfg.m << "," << c.cfg.n << ") is not classified; universal forms are candidates verified up to "
                  << c.cfg.bound << "\n";
    return exit_ok;
}

int cmd_criterion(Common& c, bool witnesses, integer witness_bound) {
    c.cfg.validate();
    EscalationResult r;
    try {
        r = escalate(c, c.cfg.m, c.cfg.n);
    } catch (const DepthGuardExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_depth_guard;
    }
    CriterionSet cs = criterion_set(r);
    if (c.cfg.json_output) write_file(*c.cfg.json_output, to_json(cs, true).dump(2) + "\n");
    std::string text = emit_criterion(cs, c.cfg.format);
    int status = exit_ok;
    if (witnesses) {
        const integer wb = witness_bound > 0 ? witness_bound : c.cfg.bound;
        std::ostringstream os;
        json found = json::object();
        for (integer g : cs.elements) {
            try {
                CoeffVector b = minimality_witness(cs, g, wb);
                os << "witness g=" << g << ": " << b.to_string() << " misses exactly " << g << " on [" << cs.n << ", " << wb
                   << "]\n";
                found[std::to_string(g)] = to_json(b);
            } catch (const WitnessVerificationError& e) {
                os << "witness g=" << g << ": FAILED " << e.what() << "\n";
                found[std::to_string(g)] = nullptr;
                status = exit_mismatch;
            }
        }
        if (c.cfg.format == Format::json) {
            json j = to_json(cs);
            j["witness_bound"] = wb;
            j["witnesses"] = std::move(found);
            text = j.dump() + "\n";
        } else {
            text += os.str();
        }
    }
    emit(c, text);
    return status;
}

int cmd_verify(Common& c, const std::string& vector_text) {
    c.cfg.validate();
    CoeffVector a = CoeffVector::parse(vector_text);
    const integer m = c.cfg.m, n = c.cfg.n, bound = c.cfg.bound;
    ReprSet r = repr_set(m, a, bound);
    std::ostringstream os;
    os << "form " << a.to_string() << ", m=" << m << ", n=" << n << ", bound=" << bound << "\n";

    auto below = r.first_member(1);
    auto missing = r.first_missing(n);
    const bool clean_below = !below || *below >= n;
    os << "T(" << n << ")-universal: ";
    if (missing) {
        os << "no (truant " << *missing << ")\n";
    } else {
        os << "yes up to " << bound << "\n";
    }
    if (!clean_below) {
        os << "tight: no (represents " << *below << ")\n";
    } else if (missing) {
        os << "tight: no (misses " << *missing << ")\n";
    } else {
        os << "tight: yes " << (classified_pair(m, n) ? "(classified pair)" : "(candidate at bound)") << "\n";
        const bool fresh = is_new(m, n, a, bound);
        os << "new: " << (fresh ? "yes" : "no") << "\n";
        if (fresh) {
            const auto dir = c.data_dir.empty() ? default_data_dir() : std::filesystem::path(c.data_dir);
            for (int id : reference_table_ids()) {
                ReferenceTable t;
                try {
                    t = load_reference_table(id, dir);
                } catch (const std::exception&) {
                    continue;
                }
                if (t.kind != "candidates" || t.m != m || t.n != n) continue;
                for (const auto& row : t.rows) {
                    auto vs = row.expand();
                    if (std::find(vs.begin(), vs.end(), a) != vs.end())
                        os << "listed in reference table " << id << ", row " << detail::row_text(row) << "\n";
                }
            }
        }
    }
    emit(c, os.str());
    return exit_ok;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

int cmd_tables(Common& c, int id, const std::string& subset) {
    if (c.cfg.bound < 2) throw ConfigError("--bound must be >= 2");
    if (c.cfg.jobs < 1) throw ConfigError("--jobs must be >= 1");
    const auto dir = c.data_dir.empty() ? default_data_dir() : std::filesystem::path(c.data_dir);
    ReferenceTable ref = load_reference_table(id, dir);
    DiffReport report;
    std::string rendered;

    if (ref.kind == "gamma") {
        std::vector<integer> ms;
        if (subset.empty()) {
            for (const auto& e : ref.gammas) ms.push_back(e.m);
        } else {
            for (const auto& tok : split(subset, ',')) ms.push_back(std::stoll(tok));
        }
        std::vector<std::pair<integer, integer>> gammas;
        for (integer m : ms) {
            Common sub = c;
            sub.cfg.m = m;
            sub.cfg.n = 1;
            sub.cfg.validate();
            gammas.emplace_back(m, criterion_set(escalate(sub, m, 1)).gamma());
        }
        rendered = emit_gamma_table(gammas, c.cfg.format);
        report = diff_gamma(ref, gammas);
    } else if (ref.kind == "criterion_sets") {
        std::vector<std::pair<integer, integer>> pairs;
        if (subset.empty()) {
            pairs = ref.default_pairs();
        } else {
            for (const auto& tok : split(subset, ',')) {
                auto mn = split(tok, ':');
                if (mn.size() != 2) throw ConfigError("--subset for table 4 takes m:n pairs, e.g. 3:1,4:2");
                pairs.emplace_back(std::stoll(mn[0]), std::stoll(mn[1]));
            }
        }
        std::vector<CriterionSet> sets;
        for (auto [m, n] : pairs) {
            Common sub = c;
            sub.cfg.m = m;
            sub.cfg.n = n;
            sub.cfg.validate();
            sets.push_back(criterion_set(escalate(sub, m, n)));
            rendered += emit_criterion(sets.back(), c.cfg.format);
        }
        report = diff_criterion(ref, sets);
    } else {
        Common sub = c;
        sub.cfg.m = ref.m;
        sub.cfg.n = ref.n;
        sub.cfg.validate();
        EscalationResult r = escalate(sub, ref.m, ref.n);
        if (c.cfg.json_output) write_file(*c.cfg.json_output, to_json(r).dump(2) + "\n");
        rendered = emit_candidates(r, c.cfg.format);
        report = diff_candidates(ref, r);
    }
    emit(c, rendered);
    std::cerr << report.render();
    std::cout << "table " << id << ": " << report.summary() << (report.ok() ? " (match)" : " (MISMATCH)") << "\n";
    return report.ok() ? exit_ok : exit_mismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Escalation for tight T(n)-universal sums of generalized m-gonal numbers"};
    app.require_subcommand(1);
    Common common;

    auto* esc = app.add_subcommand("escalate", "enumerate new tight T(n)-universal candidates");
    add_run_options(esc, common);

    bool witnesses = false;
    integer witness_bound = 0;
    auto* crit = app.add_subcommand("criterion", "criterion set CS(m,n) and gamma_{m,n}");
    add_run_options(crit, common);
    crit->add_flag("--witnesses", witnesses, "construct and verify a minimality witness for every element");
    crit->add_option("--witness-bound", witness_bound, "bound for witness verification (default: --bound)");

    std::string vector_text;
    auto* ver = app.add_subcommand("verify", "tight/new report for one form");
    add_run_options(ver, common);
    ver->add_option("vector", vector_text, "coefficients, e.g. 1,1,1,1")->required();
    ver->add_option("--data-dir", common.data_dir, "reference data directory");

    int table_id = 0;
    std::string subset;
    auto* tab = app.add_subcommand("tables", "reproduce a reference table and diff against it");
    add_run_options(tab, common, false);
    tab->add_option("--id", table_id, "table id (1-8)")->required();
    tab->add_option("--subset", subset, "table 1: m list (3,4,8); table 4: m:n pairs (3:1,4:2)");
    tab->add_option("--data-dir", common.data_dir, "reference data directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        finalize(common);
        if (*esc) return cmd_escalate(common);
        if (*crit) return cmd_criterion(common, witnesses, witness_bound);
        if (*ver) return cmd_verify(common, vector_text);
        if (*tab) return cmd_tables(common, table_id, subset);
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const UnknownTableError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    }
    return exit_usage;
}
