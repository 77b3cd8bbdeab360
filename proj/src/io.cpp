#include "hyperloc/io.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hyperloc {

using nlohmann::json;

namespace {

json int_json(const Int& v) {
    if (v.fits_slong_p()) return static_cast<long long>(v.get_si());
    return v.get_str();
}

json intvec_json(const IntVec& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(int_json(x));
    return a;
}

json intmat_json(const IntMat& m) {
    json a = json::array();
    for (const IntVec& r : m) a.push_back(intvec_json(r));
    return a;
}

json longvec_json(const std::vector<long>& v) {
    json a = json::array();
    for (long x : v) a.push_back(x);
    return a;
}

long require_long(const json& j, const std::string& field) {
    if (!j.is_number_integer())
        throw std::invalid_argument("field '" + field + "' must be an integer");
    return j.get<long>();
}

Int json_int(const json& j, const std::string& field) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("field '" + field + "' must be an integer");
}

}  // namespace

ProblemInput parse_input(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed input: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("malformed input: top level must be an object");
    if (j.contains("schema") && j["schema"] != kInputSchema)
        throw std::invalid_argument("field 'schema' must be \"" + std::string(kInputSchema) +
                                    "\"");
    for (const char* f : {"n", "d", "A", "delta"})
        if (!j.contains(f)) throw std::invalid_argument(std::string("missing field '") + f + "'");
    ProblemInput in;
    in.n = static_cast<int>(require_long(j["n"], "n"));
    in.d = static_cast<int>(require_long(j["d"], "d"));
    if (in.n < 1) throw std::invalid_argument("field 'n' must be positive");
    if (in.d <= 0 || in.d >= in.n)
        throw std::invalid_argument("field 'd' must satisfy 0 < d < n");
    if (!j["A"].is_array() || j["A"].size() != static_cast<std::size_t>(in.n))
        throw std::invalid_argument("field 'A' must be an array of n rows");
    for (int i = 0; i < in.n; ++i) {
        const json& row = j["A"][i];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(in.d))
            throw std::invalid_argument("row " + std::to_string(i + 1) +
                                        " of 'A' must have d entries");
        IntVec r;
        for (const json& e : row) r.push_back(json_int(e, "A"));
        in.a.push_back(r);
    }
    if (!j["delta"].is_array() || j["delta"].size() != static_cast<std::size_t>(in.d))
        throw std::invalid_argument("field 'delta' must have d entries");
    for (const json& e : j["delta"]) in.delta.push_back(json_int(e, "delta"));
    if (j.contains("p")) {
        long p = require_long(j["p"], "p");
        if (!is_prime(p)) throw std::invalid_argument("p must be prime");
        in.p = p;
    }
    if (j.contains("lambda")) {
        if (!j["lambda"].is_array() || j["lambda"].size() != static_cast<std::size_t>(in.d))
            throw std::invalid_argument("field 'lambda' must have d entries");
        std::vector<long> lam;
        for (const json& e : j["lambda"]) lam.push_back(require_long(e, "lambda"));
        in.lambda = lam;
    }
    if (j.contains("options")) {
        const json& o = j["options"];
        if (!o.is_object()) throw std::invalid_argument("field 'options' must be an object");
        if (o.contains("strategy")) {
            in.strategy = o["strategy"].get<std::string>();
            if (in.strategy != "direct" && in.strategy != "chain")
                throw std::invalid_argument("options.strategy must be 'direct' or 'chain'");
        }
        if (o.contains("radius")) {
            in.radius = require_long(o["radius"], "options.radius");
            if (in.radius < 0) throw std::invalid_argument("options.radius must be >= 0");
        }
        if (o.contains("a_max")) in.a_max = require_long(o["a_max"], "options.a_max");
        if (o.contains("m")) in.m_shift = require_long(o["m"], "options.m");
        if (o.contains("q")) {
            in.q = require_long(o["q"], "options.q");
            if (in.q < 2) throw std::invalid_argument("options.q must be >= 2");
        }
        if (o.contains("guard_points")) {
            long g = require_long(o["guard_points"], "options.guard_points");
            if (g < 1) throw std::invalid_argument("options.guard_points must be >= 1");
            in.guard = static_cast<unsigned long long>(g);
        }
    }
    return in;
}

json input_to_json(const ProblemInput& in) {
    json j;
    j["schema"] = kInputSchema;
    j["n"] = in.n;
    j["d"] = in.d;
    j["A"] = intmat_json(in.a);
    j["delta"] = intvec_json(in.delta);
    if (in.p) j["p"] = *in.p;
    if (in.lambda) j["lambda"] = longvec_json(*in.lambda);
    j["options"] = {{"strategy", in.strategy},
                    {"radius", in.radius},
                    {"a_max", in.a_max},
                    {"m", in.m_shift},
                    {"q", in.q},
                    {"guard_points", in.guard}};
    return j;
}

std::string input_hash(const ProblemInput& in) {
    std::string s = input_to_json(in).dump();
    unsigned long long h = 1469598103934665603ULL;  // FNV-1a 64
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

json certificate_to_json(const Certificate& cert, const std::string& hash) {
    json j;
    j["schema"] = kCertSchema;
    j["input_hash"] = hash;
    j["A"] = intmat_json(cert.a_matrix);
    j["n"] = cert.n;
    j["d"] = cert.d;
    j["delta"] = intvec_json(cert.delta);
    j["p"] = cert.p;
    j["lambda"] = longvec_json(cert.lambda);
    j["strategy"] = cert.strategy;
    j["s_delta"] = cert.s_delta;
    j["N_delta"] = int_json(cert.n_delta);
    j["bound_M"] = int_json(cert.bound_m);
    j["p_exceeds_bound"] = cert.p_exceeds_bound;
    json steps = json::array();
    for (const CertStep& s : cert.steps)
        steps.push_back({{"index", s.index},
                         {"direction", s.direction},
                         {"target", longvec_json(s.target)},
                         {"boxes_checked", s.boxes_checked}});
    j["steps"] = steps;
    return j;
}

Certificate certificate_from_json(const json& j, std::string* hash_out) {
    if (!j.is_object() || !j.contains("schema") || j["schema"] != kCertSchema)
        throw std::invalid_argument("not a certificate file");
    Certificate c;
    if (hash_out && j.contains("input_hash")) *hash_out = j["input_hash"].get<std::string>();
    for (const json& row : j.at("A")) {
        IntVec r;
        for (const json& e : row) r.push_back(json_int(e, "A"));
        c.a_matrix.push_back(r);
    }
    c.n = j.at("n").get<int>();
    c.d = j.at("d").get<int>();
    for (const json& e : j.at("delta")) c.delta.push_back(json_int(e, "delta"));
    c.p = j.at("p").get<long>();
    c.lambda = j.at("lambda").get<std::vector<long>>();
    c.strategy = j.at("strategy").get<std::string>();
    c.s_delta = j.at("s_delta").get<long>();
    c.n_delta = json_int(j.at("N_delta"), "N_delta");
    c.bound_m = json_int(j.at("bound_M"), "bound_M");
    c.p_exceeds_bound = j.at("p_exceeds_bound").get<bool>();
    for (const json& s : j.at("steps")) {
        CertStep st;
        st.index = s.at("index").get<long>();
        st.direction = s.at("direction").get<std::string>();
        st.target = s.at("target").get<std::vector<long>>();
        st.boxes_checked = s.at("boxes_checked").get<unsigned long long>();
        c.steps.push_back(st);
    }
    return c;
}

namespace {

long require_p(const ProblemInput& in) {
    if (!in.p) throw std::invalid_argument("this command requires a prime 'p' in the input");
    return *in.p;
}

json weight_json(const std::vector<long>& residues, long p) {
    FpWeight w;
    w.p = p;
    w.coords = residues;
    return {{"residues", longvec_json(residues)}, {"signed_lift", longvec_json(signed_lift(w))}};
}

json results_check_input(const ProblemInput& in, const TorusAction& action) {
    Character delta{in.delta};
    return {{"input", input_to_json(in)},
            {"pi", intmat_json(action.pi)},
            {"unimodular", is_unimodular(action)},
            {"delta_smooth", is_smooth_parameter(action, delta)},
            {"delta_admissible", is_admissible_parameter(action, delta)}};
}

json results_vertices(const ProblemInput& in, const TorusAction& action) {
    auto verts = enumerate_vertices(build_P(action, Character{in.delta}));
    json vl = json::array();
    for (const Vertex& v : verts) vl.push_back(intvec_json(v.coords));
    json r = {{"vertices", vl}, {"s_delta", verts.size()}};
    if (!verts.empty()) {
        NStats st = n_stats(verts);
        r["N_per_vertex"] = intvec_json(st.per_vertex);
        r["N_delta"] = int_json(st.n_delta);
    }
    return r;
}

json results_koszul(const ProblemInput& in, const TorusAction& action, bool* sound) {
    auto verts = enumerate_vertices(build_P(action, Character{in.delta}));
    KoszulData k = koszul_data(verts, in.m_shift);
    json terms = json::array();
    for (const KoszulTerm& t : k.terms)
        terms.push_back(
            {{"degree", t.degree}, {"rank", int_json(t.rank)}, {"twist", int_json(t.twist)}});
    bool d2 = koszul_d_squared_zero(k);
    *sound = d2;
    json gens = json::array();
    for (const Vertex& v : verts) {
        VertexMonomial m = vertex_monomial(v, action.n);
        gens.push_back({{"x_exponents", intvec_json(m.x_exponents)},
                        {"d_exponents", intvec_json(m.d_exponents)}});
    }
    return {{"s", k.s},
            {"m", k.m},
            {"terms", terms},
            {"generators", gens},
            {"d_squared_zero", d2}};
}

json results_bound(const ProblemInput& in, const TorusAction& action) {
    MinNResult r = search_min_N(action, in.radius);
    return {{"delta_star", intvec_json(r.delta_star.coords)},
            {"N", int_json(r.n_value)},
            {"radius", r.radius},
            {"bound_prop", int_json(bound_prop(action, r.n_value))},
            {"bound_M", int_json(bound_M(action, r.n_value))}};
}

json results_bad_set(const ProblemInput& in, const TorusAction& action) {
    long p = require_p(in);
    long a_max = in.a_max;
    if (a_max < 0) {
        auto verts = enumerate_vertices(build_P(action, Character{in.delta}));
        a_max = static_cast<long>(verts.size());
    }
    BadSet bs = bad_set(action, Character{in.delta}, p, a_max);
    json elems = json::array();
    for (const auto& [w, wit] : bs.elements) {
        json ws = json::array();
        for (const RootWitness& rw : wit)
            ws.push_back(
                {{"a", rw.a}, {"direction", rw.direction}, {"xi", longvec_json(rw.xi)}});
        json e = weight_json(w, p);
        e["witnesses"] = ws;
        elems.push_back(e);
    }
    return {{"p", p}, {"a_max", a_max}, {"size", bs.elements.size()}, {"elements", elems}};
}

json refusal_json(const Refusal& r) {
    return {{"index", r.index}, {"direction", r.direction}, {"xi", longvec_json(r.xi)}};
}

json results_scan(const ProblemInput& in, const TorusAction& action, long lo, long hi) {
    auto rows = scan_primes(action, Character{in.delta}, lo, hi, in.strategy, in.guard);
    json out = json::array();
    for (const ScanRow& r : rows) {
        json row = {{"p", r.p},
                    {"guard_exceeded", r.guard_exceeded},
                    {"certified_count", r.certified_count},
                    {"p_exceeds_bound", r.p_exceeds_bound}};
        if (r.sample) row["sample_lambda"] = weight_json(r.sample->lambda, r.p);
        out.push_back(row);
    }
    return {{"strategy", in.strategy}, {"rows", out}};
}

json results_stability(const ProblemInput& in, const TorusAction& action) {
    Character delta{in.delta};
    auto table = unstable_table(action, delta, in.q, in.guard);
    bool gens_ok = check_unstable_generators(action, delta, in.q, in.guard);
    json pts = json::array();
    for (const auto& pt : table) pts.push_back(longvec_json(pt));
    return {{"q", in.q},
            {"unstable_count", table.size()},
            {"unstable_points", pts},
            {"generators_cut_out_unstable_locus", gens_ok}};
}

struct SelfTestCheck {
    std::string name;
    bool pass;
};

std::vector<SelfTestCheck> oracle_selftest() {
    std::vector<SelfTestCheck> checks;
    for (long m = 0; m <= 4; ++m) {
        std::vector<unsigned> e{static_cast<unsigned>(m)};
        WeylElement xd = weyl_multiply(weyl_monomial(e, {0}), weyl_monomial({0}, e));
        checks.push_back({"normal_order_xd m=" + std::to_string(m),
                          euler_expand(normal_order_xd(m)) == xd});
        WeylElement dx = weyl_multiply(weyl_monomial({0}, e), weyl_monomial(e, {0}));
        checks.push_back({"normal_order_dx m=" + std::to_string(m),
                          euler_expand(normal_order_dx(m)) == dx});
    }
    TorusAction diag = build_action({{1}, {1}});
    auto verts = enumerate_vertices(build_P(diag, Character{{Int(1)}}));
    for (const Vertex& v : verts)
        for (long a = 1; a <= 2; ++a) {
            WeylElement f = weyl_f_monomial(v, a, diag.n);
            WeylElement g = weyl_g_monomial(v, a, diag.n);
            checks.push_back({"fg factor system a=" + std::to_string(a),
                              euler_expand(factor_system_fg(v, a, diag.n)) ==
                                  weyl_multiply(f, g)});
            checks.push_back({"gf factor system a=" + std::to_string(a),
                              euler_expand(factor_system_gf(v, a, diag.n)) ==
                                  weyl_multiply(g, f)});
        }
    return checks;
}

void emit(std::ostream& os, const std::string& format, const std::string& command,
          const std::string& hash, const json& results, double seconds) {
    if (format == "json") {
        json report = {{"schema", kReportSchema},
                       {"command", command},
                       {"input_hash", hash},
                       {"version", kToolVersion},
                       {"results", results}};
        os << report.dump(2) << "\n";
    } else {
        os << "hyperloc " << kToolVersion << " | " << command << " | input " << hash << "\n";
        os << results.dump(2) << "\n";
        os << "elapsed: " << seconds << " s\n";
    }
}

}  // namespace

int run_command(const CommandRequest& req, std::ostream& os) {
    auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    };
    try {
        json results;
        bool sound = true;

        if (req.command == "verify-cert") {
            if (!req.cert_text)
                throw std::invalid_argument("verify-cert requires a certificate file");
            Certificate cert = certificate_from_json(json::parse(*req.cert_text));
            VerifyResult vr = verify_certificate(cert, req.input.guard);
            results = {{"ok", vr.ok}, {"trail", vr.trail}};
            emit(os, req.format, req.command, "-", results, elapsed());
            return vr.ok ? 0 : 4;
        }
        if (req.command == "oracle-selftest") {
            json checks = json::array();
            for (const auto& c : oracle_selftest()) {
                checks.push_back({{"name", c.name}, {"pass", c.pass}});
                sound = sound && c.pass;
            }
            results = {{"checks", checks}, {"all_pass", sound}};
            emit(os, req.format, req.command, "-", results, elapsed());
            return sound ? 0 : 4;
        }

        const ProblemInput& in = req.input;
        std::string hash = input_hash(in);
        TorusAction action = build_action(in.a);
        if (static_cast<std::size_t>(in.d) != static_cast<std::size_t>(action.d))
            throw std::invalid_argument("field 'd' does not match the rank of A");

        if (req.command == "check-input") {
            results = results_check_input(in, action);
        } else if (req.command == "vertices") {
            results = results_vertices(in, action);
        } else if (req.command == "koszul") {
            results = results_koszul(in, action, &sound);
        } else if (req.command == "bound") {
            results = results_bound(in, action);
        } else if (req.command == "bad-set") {
            results = results_bad_set(in, action);
        } else if (req.command == "certify") {
            long p = require_p(in);
            Character delta{in.delta};
            if (in.lambda) {
                FpWeight lam = reduce_weight(*in.lambda, p);
                CertifyOutcome outcome = in.strategy == "direct"
                                             ? certify_direct(action, delta, p, lam)
                                             : certify_chain(action, delta, p, lam);
                results = {{"p", p},
                           {"strategy", in.strategy},
                           {"lambda", weight_json(lam.coords, p)},
                           {"certified", outcome.certified()}};
                if (outcome.certified()) {
                    json cj = certificate_to_json(*outcome.certificate, hash);
                    results["certificate"] = cj;
                    if (req.out_path) {
                        std::ofstream f(*req.out_path);
                        if (!f) throw std::runtime_error("cannot write " + *req.out_path);
                        f << cj.dump(2) << "\n";
                        // Every certificate written to disk is re-verified on
                        // the spot; a failure here is a soundness bug.
                        try {
                            VerifyResult vr =
                                verify_certificate(*outcome.certificate, in.guard);
                            results["reverified"] = vr.ok;
                            sound = vr.ok;
                        } catch (const GuardExceeded&) {
                            results["reverified"] = "skipped: enumeration guard";
                        }
                    }
                } else {
                    results["refusal"] = refusal_json(*outcome.refusal);
                }
            } else {
                auto lams = certified_lambdas(action, delta, p, in.strategy, in.guard);
                json ls = json::array();
                for (const auto& l : lams) ls.push_back(weight_json(l, p));
                results = {{"p", p},
                           {"strategy", in.strategy},
                           {"certified_count", lams.size()},
                           {"certified", ls}};
            }
        } else if (req.command == "scan-primes") {
            if (!req.p_lo || !req.p_hi)
                throw std::invalid_argument("scan-primes requires --p-range LO..HI");
            results = results_scan(in, action, *req.p_lo, *req.p_hi);
        } else if (req.command == "stability-table") {
            results = results_stability(in, action);
        } else {
            throw std::invalid_argument("unknown command: " + req.command);
        }

        emit(os, req.format, req.command, hash, results, elapsed());
        return sound ? 0 : 4;
    } catch (const GuardExceeded& e) {
        os << "guard exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        os << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        os << "internal soundness failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        os << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hyperloc
