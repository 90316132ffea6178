// Command-line harness for the instrumented MMSE-SIC detector experiments.
//
// Subcommands:
//   worstcase  deterministic worst-case operation ledgers per (detector, N)
//   average    Monte Carlo mean ledgers over random channels
//   theory     closed-form budget values only (no detector runs)
//   verify     cross-check both detectors against the brute-force reference
//
// worstcase/average/theory emit one fixed CSV schema to --out (default
// stdout); verify prints a short report. Exit codes: 0 success, 1
// verification mismatch, 2 invalid arguments.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "osic/experiment.hpp"

namespace {

// Accepts "8", "2,4,8", or "start:stop:step" (step optional, default 1).
std::vector<long long> parse_dims(const std::string& text) {
    std::vector<long long> out;
    auto to_ll = [](const std::string& s) {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    };
    try {
        if (text.find(':') != std::string::npos) {
            std::vector<std::string> parts;
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ':')) parts.push_back(item);
            if (parts.size() != 2 && parts.size() != 3)
                throw std::invalid_argument("expected start:stop[:step]");
            const long long start = to_ll(parts[0]);
            const long long stop = to_ll(parts[1]);
            const long long step = parts.size() == 3 ? to_ll(parts[2]) : 1;
            if (start < 1 || stop < start || step < 1)
                throw std::invalid_argument("bad range");
            for (long long v = start; v <= stop; v += step) out.push_back(v);
        } else {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(to_ll(item));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid --n value: " + text);
    }
    if (out.empty()) throw std::invalid_argument("invalid --n value: " + text);
    for (long long v : out)
        if (v < 1) throw std::invalid_argument("dimensions must be >= 1");
    return out;
}

// "square" keeps M = N per cell; an integer fixes M for all cells.
long long parse_m(const std::string& text) {
    if (text == "square") return 0;
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(text, &pos);
        if (pos != text.size() || v < 1) throw std::invalid_argument("bad");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid --m value: " + text);
    }
}

void emit_csv(const std::vector<osic::ComplexityRow>& rows, const std::string& out_path) {
    if (out_path.empty()) {
        osic::write_csv(std::cout, rows);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output path: " + out_path);
    osic::write_csv(f, rows);
    if (!f) throw std::invalid_argument("failed writing output path: " + out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Instrumented ordered MMSE-SIC detectors: complexity ledgers and checks"};
    app.require_subcommand(1);

    std::string n_text = "2,4,8,16";
    std::string m_text = "square";
    std::string out_path;
    std::string constellation_name = "qpsk";
    long long trials = 1000;
    std::uint64_t seed = 42;
    double sigma2 = 0.1;

    auto add_common = [&](CLI::App* sub, bool with_channel) {
        sub->add_option("--n", n_text, "sizes: list (2,4,8) or range (start:stop[:step])");
        sub->add_option("--m", m_text, "receive dimension: integer or 'square' (M = N)");
        if (with_channel) {
            sub->add_option("--trials", trials, "Monte Carlo trials per cell");
            sub->add_option("--seed", seed, "base seed; trial t uses seed + t");
            sub->add_option("--sigma2", sigma2, "noise variance")
                ->check(CLI::NonNegativeNumber);
            sub->add_option("--constellation", constellation_name, "bpsk | qpsk | qam16");
        }
    };

    CLI::App* sc_worst = app.add_subcommand("worstcase", "worst-case ledgers (deterministic)");
    add_common(sc_worst, false);
    sc_worst->add_option("--out", out_path, "output CSV path (default stdout)");

    CLI::App* sc_avg = app.add_subcommand("average", "mean ledgers over random channels");
    add_common(sc_avg, true);
    sc_avg->add_option("--out", out_path, "output CSV path (default stdout)");

    CLI::App* sc_theory = app.add_subcommand("theory", "closed-form budget values");
    add_common(sc_theory, false);
    sc_theory->add_option("--out", out_path, "output CSV path (default stdout)");

    CLI::App* sc_verify = app.add_subcommand("verify", "detectors vs. brute-force reference");
    add_common(sc_verify, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const std::vector<long long> n_list = parse_dims(n_text);
        const long long m_fixed = parse_m(m_text);
        if (sc_worst->parsed()) {
            emit_csv(osic::run_worstcase(n_list, m_fixed), out_path);
        } else if (sc_avg->parsed()) {
            const osic::Constellation c = osic::constellation_by_name(constellation_name);
            emit_csv(osic::run_average(n_list, m_fixed, trials, seed, sigma2, c), out_path);
        } else if (sc_theory->parsed()) {
            emit_csv(osic::run_theory(n_list, m_fixed), out_path);
        } else {
            const osic::Constellation c = osic::constellation_by_name(constellation_name);
            const osic::VerifyStats s =
                osic::run_verify(n_list, m_fixed, trials, seed, sigma2, c);
            std::cout << "trials=" << s.trials_run << " mismatches=" << s.mismatches
                      << " max_soft_deviation=" << s.max_soft_deviation << "\n";
            if (s.mismatches != 0) return 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
