// hyperloc: exact certification of derived localization for hypertoric
// quantum Hamiltonian reductions in positive characteristic.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hyperloc/io.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<long> parse_lambda(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact localization certificates for hypertoric reductions"};
    app.require_subcommand(1);

    std::string input_path, format = "text", strategy, p_range, lambda_str, out_path;
    long p_flag = 0, radius = -1, q_flag = 0, m_flag = 0;
    long long guard_flag = 0;

    const char* commands[] = {"check-input", "vertices",    "koszul",
                              "bound",       "bad-set",     "certify",
                              "scan-primes", "stability-table", "verify-cert",
                              "oracle-selftest"};
    for (const char* c : commands) {
        CLI::App* sub = app.add_subcommand(c);
        sub->add_option("--input", input_path, "problem or certificate file (JSON)");
        sub->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--strategy", strategy, "direct or chain")
            ->check(CLI::IsMember({"direct", "chain"}));
        sub->add_option("--p", p_flag, "prime p (overrides the input file)");
        sub->add_option("--p-range", p_range, "prime range LO..HI for scan-primes");
        sub->add_option("--radius", radius, "search box radius for bound");
        sub->add_option("--lambda", lambda_str, "comma-separated lambda residues");
        sub->add_option("--out", out_path, "write the certificate to this file");
        sub->add_option("--q", q_flag, "field size for stability-table");
        sub->add_option("--m", m_flag, "Koszul shift");
        sub->add_option("--guard-points", guard_flag, "enumeration guard override");
    }

    CLI11_PARSE(app, argc, argv);

    hyperloc::CommandRequest req;
    req.command = app.get_subcommands().front()->get_name();
    req.format = format;
    if (!out_path.empty()) req.out_path = out_path;

    try {
        if (req.command == "verify-cert") {
            if (input_path.empty()) {
                std::cerr << "input error: verify-cert requires --input FILE\n";
                return 2;
            }
            req.cert_text = slurp(input_path);
        } else if (req.command != "oracle-selftest") {
            if (input_path.empty()) {
                std::cerr << "input error: this command requires --input FILE\n";
                return 2;
            }
            req.input = hyperloc::parse_input(slurp(input_path));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (p_flag > 0) {
        if (!hyperloc::is_prime(p_flag)) {
            std::cerr << "input error: p must be prime\n";
            return 2;
        }
        req.input.p = p_flag;
    }
    if (!strategy.empty()) req.input.strategy = strategy;
    if (radius >= 0) req.input.radius = radius;
    if (q_flag >= 2) req.input.q = q_flag;
    if (m_flag != 0) req.input.m_shift = m_flag;
    if (!lambda_str.empty()) {
        try {
            req.input.lambda = parse_lambda(lambda_str);
        } catch (const std::exception&) {
            std::cerr << "input error: --lambda wants comma-separated integers\n";
            return 2;
        }
    }
    if (guard_flag > 0) req.input.guard = static_cast<unsigned long long>(guard_flag);
    if (const char* env = std::getenv("HYPERLOC_GUARD_POINTS"); env && guard_flag <= 0) {
        try {
            req.input.guard = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "input error: HYPERLOC_GUARD_POINTS must be a positive integer\n";
            return 2;
        }
    }
    if (!p_range.empty()) {
        auto dots = p_range.find("..");
        if (dots == std::string::npos) {
            std::cerr << "input error: --p-range wants LO..HI\n";
            return 2;
        }
        try {
            req.p_lo = std::stol(p_range.substr(0, dots));
            req.p_hi = std::stol(p_range.substr(dots + 2));
        } catch (const std::exception&) {
            std::cerr << "input error: --p-range wants LO..HI\n";
            return 2;
        }
    }

    return hyperloc::run_command(req, std::cout);
}
