#include "sievelab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sievelab/constellation.hpp"
#include "sievelab/dynamics.hpp"
#include "sievelab/gap_cycle.hpp"
#include "sievelab/numeric.hpp"
#include "sievelab/polignac.hpp"
#include "sievelab/prime_census.hpp"

namespace sievelab {

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitResourceLimit = 3;

uint64_t memory_budget_from_env() {
    const char* env = std::getenv("SIEVE_LAB_MEM_BUDGET");
    if (!env || !*env) return kDefaultMemoryBudget;
    char* end = nullptr;
    unsigned long long value = std::strtoull(env, &end, 10);
    uint64_t scale = 1;
    if (end && *end) {
        switch (*end) {
            case 'k': case 'K': scale = 1ull << 10; break;
            case 'm': case 'M': scale = 1ull << 20; break;
            case 'g': case 'G': scale = 1ull << 30; break;
            default:
                throw precondition_error("SIEVE_LAB_MEM_BUDGET: expected BYTES with optional K/M/G suffix");
        }
    }
    if (value == 0) throw precondition_error("SIEVE_LAB_MEM_BUDGET must be positive");
    return value * scale;
}

unsigned default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n ? n : 1;
}

// Writes to --output when given, else to the session stream.
class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw precondition_error("cannot open output file: " + path);
            stream_ = &file_;
        }
    }
    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

json census_json(const Census& c) {
    json counts = json::array();
    for (const Int& n : c.counts) counts.push_back(n.get_str());
    return json{{"constellation", c.constellation.str()},
                {"stage_prime", c.stage_prime},
                {"j1", c.j_min},
                {"J", c.j_max()},
                {"counts", counts}};
}

// Builds the census of s in G(p#), materializing when the budget allows and
// streaming otherwise.
Census census_at_stage(const Constellation& s, uint64_t p, unsigned threads,
                       uint64_t budget) {
    if (!is_prime(p)) throw precondition_error("stage must be prime");
    if (cycle_size_estimate(p).bytes <= Int(budget))
        return scan_census(build_cycle_recursive(p, budget), s, threads);
    CycleStream stream = stream_cycle(p);
    return scan_census(stream, s);
}

// --- subcommand payloads ---------------------------------------------------

struct CycleArgs {
    uint64_t prime = 0;
    std::string emit = "text";
    bool stats_only = false;
    std::string output;
    std::string format = "text";
};

int cmd_cycle(const CycleArgs& a, std::ostream& out) {
    const uint64_t budget = memory_budget_from_env();
    OutputTarget target(a.output, out);

    if (a.stats_only) {
        uint64_t length = 0, sum = 0;
        uint32_t max_gap = 0;
        if (cycle_size_estimate(a.prime).bytes <= Int(budget)) {
            GapCycle cycle = build_cycle_recursive(a.prime, budget);
            length = cycle.size();
            sum = cycle.sum();
            max_gap = cycle.max_gap();
        } else {
            CycleStream stream = stream_cycle(a.prime);
            uint32_t g;
            while (stream.next(g)) {
                ++length;
                sum += g;
                max_gap = std::max(max_gap, g);
            }
        }
        if (a.format == "json") {
            json j{{"stage_prime", a.prime},
                   {"gap_count", length},
                   {"sum", sum},
                   {"max_gap", max_gap}};
            target.stream() << j.dump() << "\n";
        } else {
            target.stream() << "stage_prime: " << a.prime << "\n"
                            << "gap_count: " << length << "\n"
                            << "sum: " << sum << "\n"
                            << "max_gap: " << max_gap << "\n";
        }
        return kExitOk;
    }

    const bool materialize = cycle_size_estimate(a.prime).bytes <= Int(budget);
    if (a.emit == "binary") {
        if (a.output.empty())
            throw precondition_error("binary emit requires --output");
        if (materialize) {
            write_cycle_binary(build_cycle_recursive(a.prime, budget), target.stream());
        } else {
            CycleStream stream = stream_cycle(a.prime);
            write_cycle_binary(stream, target.stream());
        }
    } else {
        if (materialize) {
            write_cycle_text(build_cycle_recursive(a.prime, budget), target.stream());
        } else {
            CycleStream stream = stream_cycle(a.prime);
            write_cycle_text(stream, target.stream());
        }
    }
    return kExitOk;
}

struct CensusArgs {
    std::string constellation;
    uint64_t prime = 0;
    unsigned threads = 0;
    std::string output;
};

int cmd_census(const CensusArgs& a, std::ostream& out) {
    Constellation s = Constellation::parse(a.constellation);
    Census c = census_at_stage(s, a.prime, a.threads ? a.threads : default_threads(),
                               memory_budget_from_env());
    OutputTarget target(a.output, out);
    target.stream() << census_json(c).dump() << "\n";
    return kExitOk;
}

struct ModelArgs {
    std::string constellation;
    uint64_t from_prime = 0;
    uint64_t to_prime = 0;
    unsigned threads = 0;
    std::string output;
};

int cmd_model(const ModelArgs& a, std::ostream& out) {
    Constellation s = Constellation::parse(a.constellation);
    if (!is_prime(a.from_prime) || !is_prime(a.to_prime))
        throw precondition_error("--from and --to must be prime");
    if (a.to_prime <= a.from_prime)
        throw precondition_error("--to must exceed --from");

    Census seed = census_at_stage(s, a.from_prime,
                                  a.threads ? a.threads : default_threads(),
                                  memory_budget_from_env());

    json stages = json::array();
    auto stage_entry = [](const Census& c) {
        json counts = json::array();
        json weights = json::array();
        for (const Int& n : c.counts) counts.push_back(n.get_str());
        for (const Ratio& w : normalize(c).weights) weights.push_back(ratio_str(w));
        return json{{"prime", c.stage_prime}, {"counts", counts}, {"weights", weights}};
    };
    stages.push_back(stage_entry(seed));

    Census current = seed;
    for (uint64_t q = next_prime(a.from_prime); q <= a.to_prime; q = next_prime(q)) {
        current = propagate(current, q);
        stages.push_back(stage_entry(current));
    }

    json trace{{"constellation", s.str()},
               {"j1", seed.j_min},
               {"J", seed.j_max()},
               {"stages", stages}};
    OutputTarget target(a.output, out);
    target.stream() << trace.dump() << "\n";
    return kExitOk;
}

struct WinfArgs {
    std::string constellation;
    bool approx = false;
    unsigned threads = 0;
    std::string format = "text";
    std::string output;
};

int cmd_winf(const WinfArgs& a, std::ostream& out) {
    Constellation s = Constellation::parse(a.constellation);
    const uint64_t p0 = p0_asymptotic(s);
    Census c = census_at_stage(s, p0, a.threads ? a.threads : default_threads(),
                               memory_budget_from_env());
    Ratio w = asymptotic_weight(c);

    OutputTarget target(a.output, out);
    if (a.format == "json") {
        json j{{"constellation", s.str()},
               {"j1", s.length()},
               {"seed_stage", p0},
               {"winf", ratio_str(w)}};
        if (a.approx) j["approx"] = ratio_approx(w);
        target.stream() << j.dump() << "\n";
    } else {
        target.stream() << ratio_str(w);
        if (a.approx) target.stream() << " ≈ " << ratio_approx(w);
        target.stream() << "\n";
    }
    return kExitOk;
}

struct PolignacArgs {
    uint64_t gap = 0;
    uint64_t length = 0;
    bool approx = false;
    std::string output;
};

int cmd_polignac(const PolignacArgs& a, std::ostream& out) {
    RepetitionSpec spec{a.gap, a.length};
    const bool feasible = is_feasible(spec);
    json j{{"gap", a.gap},
           {"length", a.length},
           {"feasible", feasible}};
    json kernel = json::array();
    const SquarefreeKernel k = SquarefreeKernel::of(a.gap);
    for (uint64_t q : k.primes()) kernel.push_back(q);
    j["kernel"] = kernel;
    if (feasible) {
        Ratio w = repetition_weight(spec);
        j["weight"] = ratio_str(w);
        if (a.approx) j["approx"] = ratio_approx(w);
    } else {
        j["max_feasible_length"] = max_feasible_length(a.gap);
    }
    OutputTarget target(a.output, out);
    target.stream() << j.dump() << "\n";
    return kExitOk;
}

struct PrimesArgs {
    std::string constellation;
    uint64_t limit = 0;
    unsigned threads = 0;
    std::string format = "text";
    std::string output;
};

// The sieve-model weight is printed for context only; it says nothing about
// how many sieve constellations survive as prime constellations.
int cmd_primes(const PrimesArgs& a, std::ostream& out) {
    Constellation s = Constellation::parse(a.constellation);
    const unsigned threads = a.threads ? a.threads : default_threads();
    PrimeWindowCount fwd = count_among_primes(s, a.limit, threads);

    OutputTarget target(a.output, out);
    std::ostream& os = target.stream();

    auto csv_row = [&](const PrimeWindowCount& c) {
        os << '"' << c.constellation.str() << "\"," << c.limit << ","
           << c.occurrences.get_str() << ",";
        if (c.first_occurrence) os << *c.first_occurrence;
        os << "\n";
    };

    if (a.format == "csv") {
        os << "constellation,N,count,first_occurrence\n";
        csv_row(fwd);
        if (!s.is_palindrome()) csv_row(count_among_primes(s.reversed(), a.limit, threads));
        return kExitOk;
    }

    os << "constellation: " << s.str() << "\n"
       << "limit: " << a.limit << "\n"
       << "count: " << fwd.occurrences.get_str() << "\n";
    os << "first_occurrence: ";
    if (fwd.first_occurrence) os << *fwd.first_occurrence;
    else os << "none";
    os << "\n";
    if (!s.is_palindrome()) {
        PrimeWindowCount rev = count_among_primes(s.reversed(), a.limit, threads);
        os << "reversed " << rev.constellation.str() << ": count "
           << rev.occurrences.get_str() << ", first_occurrence ";
        if (rev.first_occurrence) os << *rev.first_occurrence;
        else os << "none";
        os << "\n";
    }
    // Context: the exact sieve-model weight, when the seed cycle is small
    // enough to scan.  A model quantity, not a survival prediction.
    if (s.all_even()) {
        try {
            Census c = census_at_stage(s, p0_asymptotic(s), threads, memory_budget_from_env());
            os << "sieve_model_weight: " << ratio_str(asymptotic_weight(c))
               << " (relative weight among sieve patterns of length " << s.length()
               << "; not a survival count)\n";
        } catch (const resource_limit_error&) {
            // Seed stage too large to scan here; skip the context line.
        }
    }
    return kExitOk;
}

struct Table1Args {
    std::string format = "text";
    unsigned threads = 0;
    std::string output;
};

struct GoldenRow {
    const char* constellation;
    uint64_t span;
    size_t j1;
    size_t J;
    uint64_t p0;
    std::vector<long> counts;
    const char* winf;
};

// Reference census seeds and asymptotic weights for the worked patterns.
const std::vector<GoldenRow>& golden_rows() {
    static const std::vector<GoldenRow> rows = {
        {"2,4,2", 8, 3, 3, 5, {1}, "1"},
        {"4,2,4", 10, 3, 3, 5, {2}, "2"},
        {"2,10,2", 14, 3, 4, 7, {2, 6}, "8/3"},
        {"4,2,4,2,4", 16, 5, 5, 7, {1}, "1"},
        {"2,10,2,10,2", 26, 5, 7, 13, {52, 44, 48}, "144/35"},
        {"2,10,2,10,2,4,2,10,2,10,2", 56, 11, 13, 13, {2, 10, 12}, "24"},
        {"6,6", 12, 2, 4, 5, {0, 2, 2}, "2"},
        {"12,12", 24, 2, 6, 11, {0, 2, 20, 48, 58}, "2"},
        {"6,6,6", 18, 3, 5, 7, {0, 4, 2}, "2"},
    };
    return rows;
}

int cmd_table1(const Table1Args& a, std::ostream& out) {
    const unsigned threads = a.threads ? a.threads : default_threads();
    OutputTarget target(a.output, out);
    std::ostream& os = target.stream();

    bool all_ok = true;
    if (a.format == "csv")
        os << "constellation,span,j1,J,p0,counts,winf,status\n";

    for (const GoldenRow& row : golden_rows()) {
        Constellation s = Constellation::parse(row.constellation);
        Census c = census_at_stage(s, row.p0, threads, memory_budget_from_env());
        Ratio w = asymptotic_weight(c);

        bool ok = s.span() == row.span && s.length() == row.j1 && c.j_max() == row.J &&
                  ratio_str(w) == row.winf && c.counts.size() == row.counts.size();
        if (ok)
            for (size_t i = 0; i < row.counts.size(); ++i)
                if (c.counts[i] != row.counts[i]) ok = false;
        all_ok = all_ok && ok;

        std::ostringstream counts;
        for (size_t i = 0; i < c.counts.size(); ++i) {
            if (i) counts << ',';
            counts << c.counts[i].get_str();
        }
        if (a.format == "csv") {
            os << '"' << s.str() << "\"," << s.span() << "," << s.length() << ","
               << c.j_max() << "," << row.p0 << ",\"" << counts.str() << "\","
               << "\"" << ratio_str(w) << "\"," << (ok ? "ok" : "MISMATCH") << "\n";
        } else {
            os << "s=" << s.str() << " |s|=" << s.span() << " j1=" << s.length()
               << " J=" << c.j_max() << " p0=" << row.p0 << " n=[" << counts.str()
               << "] winf=" << ratio_str(w) << (ok ? "" : "  MISMATCH") << "\n";
        }
    }
    return all_ok ? kExitOk : kExitMismatch;
}

json error_json(const std::string& kind, const std::string& what) {
    return json{{"error", kind}, {"detail", what}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact gap-constellation populations across the stages of Eratosthenes sieve"};
    app.require_subcommand(1);

    CycleArgs cycle_args;
    auto* cycle = app.add_subcommand("cycle", "build or stream the cycle of gaps G(p#)");
    cycle->add_option("-p,--prime", cycle_args.prime, "stage prime")->required();
    cycle->add_option("--emit", cycle_args.emit, "text|binary")
        ->check(CLI::IsMember({"text", "binary"}));
    cycle->add_flag("--stats", cycle_args.stats_only, "print length, sum, max gap only");
    cycle->add_option("--format", cycle_args.format, "stats format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    cycle->add_option("-o,--output", cycle_args.output, "write to file instead of stdout");

    CensusArgs census_args;
    auto* census = app.add_subcommand("census", "count driving terms for a constellation in G(p#)");
    census->add_option("-s,--constellation", census_args.constellation, "e.g. 2,10,2")->required();
    census->add_option("-p,--prime", census_args.prime, "stage prime")->required();
    census->add_option("-t,--threads", census_args.threads, "scan workers");
    census->add_option("-o,--output", census_args.output, "write to file instead of stdout");

    ModelArgs model_args;
    auto* model = app.add_subcommand("model", "propagate a census stage by stage (exact)");
    model->add_option("-s,--constellation", model_args.constellation)->required();
    model->add_option("--from", model_args.from_prime, "seed stage (scanned)")->required();
    model->add_option("--to", model_args.to_prime, "final stage")->required();
    model->add_option("-t,--threads", model_args.threads, "seed scan workers");
    model->add_option("-o,--output", model_args.output, "write to file instead of stdout");

    WinfArgs winf_args;
    auto* winf = app.add_subcommand("winf", "asymptotic relative weight of a constellation");
    winf->add_option("-s,--constellation", winf_args.constellation)->required();
    winf->add_flag("--approx", winf_args.approx, "append a 15-digit decimal");
    winf->add_option("-t,--threads", winf_args.threads, "seed scan workers");
    winf->add_option("--format", winf_args.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    winf->add_option("-o,--output", winf_args.output, "write to file instead of stdout");

    PolignacArgs polignac_args;
    auto* polignac = app.add_subcommand("polignac", "feasibility and weight of a repeated gap");
    polignac->add_option("-g,--gap", polignac_args.gap, "even gap")->required();
    polignac->add_option("-j,--length", polignac_args.length, "repetition length")->required();
    polignac->add_flag("--approx", polignac_args.approx, "append a 15-digit decimal");
    polignac->add_option("-o,--output", polignac_args.output, "write to file instead of stdout");

    PrimesArgs primes_args;
    auto* primes = app.add_subcommand("primes", "count a pattern among actual consecutive primes");
    primes->add_option("-s,--constellation", primes_args.constellation)->required();
    primes->add_option("--limit", primes_args.limit, "sieve bound")->required();
    primes->add_option("-t,--threads", primes_args.threads, "sieve workers");
    primes->add_option("--format", primes_args.format, "text|csv")
        ->check(CLI::IsMember({"text", "csv"}));
    primes->add_option("-o,--output", primes_args.output, "write to file instead of stdout");

    Table1Args table_args;
    auto* table = app.add_subcommand("table1", "recompute the reference table and self-check");
    table->add_option("--format", table_args.format, "text|csv")
        ->check(CLI::IsMember({"text", "csv"}));
    table->add_option("-t,--threads", table_args.threads, "scan workers");
    table->add_option("-o,--output", table_args.output, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << error_json("usage", e.what()).dump() << "\n";
        return kExitPrecondition;
    }

    try {
        if (cycle->parsed()) return cmd_cycle(cycle_args, out);
        if (census->parsed()) return cmd_census(census_args, out);
        if (model->parsed()) return cmd_model(model_args, out);
        if (winf->parsed()) return cmd_winf(winf_args, out);
        if (polignac->parsed()) return cmd_polignac(polignac_args, out);
        if (primes->parsed()) return cmd_primes(primes_args, out);
        if (table->parsed()) return cmd_table1(table_args, out);
    } catch (const budget_exceeded_error& e) {
        json j = error_json("resource-limit", e.what());
        j["stage_prime"] = e.stage_prime;
        j["estimated_gaps"] = e.estimated_gaps;
        j["estimated_bytes"] = e.estimated_bytes;
        err << j.dump() << "\n";
        return kExitResourceLimit;
    } catch (const resource_limit_error& e) {
        err << error_json("resource-limit", e.what()).dump() << "\n";
        return kExitResourceLimit;
    } catch (const stage_condition_error& e) {
        json j = error_json("precondition", e.what());
        j["offending_stage"] = e.offending_stage;
        j["span"] = e.constellation_span;
        err << j.dump() << "\n";
        return kExitPrecondition;
    } catch (const seed_stage_error& e) {
        json j = error_json("precondition", e.what());
        j["required_stage"] = e.required_stage;
        err << j.dump() << "\n";
        return kExitPrecondition;
    } catch (const precondition_error& e) {
        err << error_json("precondition", e.what()).dump() << "\n";
        return kExitPrecondition;
    }
    return kExitOk;
}

}  // namespace sievelab
