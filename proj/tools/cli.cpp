#include "cli.hpp"

#include "selftest.hpp"

#include "kdvtau/kappa.hpp"
#include "kdvtau/npoint.hpp"
#include "kdvtau/wave.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace kdvtau::tools {

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Config {
    std::string format = "text";
    std::string out_path;
    int depth = 0;
    bool verify = false;
    int workers = 1;
};

std::vector<int> parse_list(const std::string &text, const char *what) {
    std::vector<int> v;
    if (text.empty())
        return v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int k = 0;
        try {
            k = std::stoi(item, &used);
        } catch (const std::exception &) {
            throw UsageError(std::string("malformed ") + what + ": '" + text + "'");
        }
        if (used != item.size() || k < 0)
            throw UsageError(std::string("malformed ") + what + ": '" + text + "'");
        v.push_back(k);
    }
    if (!text.empty() && text.back() == ',')
        throw UsageError(std::string("malformed ") + what + ": '" + text + "'");
    return v;
}

std::string json_rational(const Rational &r) {
    return "{\"num\":" + r.numerator().get_str() + ",\"den\":" + r.denominator().get_str() + "}";
}

std::string json_ints(const std::vector<int> &v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

std::string json_genus(const std::optional<int> &g) { return g ? std::to_string(*g) : "null"; }

std::string csv_ints(const std::vector<int> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string csv_header(const char *prefix, int n) {
    std::string s;
    for (int i = 1; i <= n; ++i)
        s += (i > 1 ? "," : "") + std::string(prefix) + std::to_string(i);
    return s;
}

std::string bracket(const std::vector<int> &ks, const Partition *lambda = nullptr) {
    std::string s = "<";
    bool first = true;
    if (lambda)
        for (int p : lambda->parts()) {
            s += (first ? "" : " ") + std::string("kappa_") + std::to_string(p);
            first = false;
        }
    for (int k : ks) {
        s += (first ? "" : " ") + std::string("tau_") + std::to_string(k);
        first = false;
    }
    return s + ">";
}

void emit(const Config &cfg, const std::string &text, std::ostream &out) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + cfg.out_path + " for writing");
    f << text;
    f.close();
    if (!f)
        throw std::runtime_error("write to " + cfg.out_path + " failed");
}

std::string render_tau(const Config &cfg, const std::vector<int> &ks) {
    auto g = genus_of(ks);
    Rational v = correlator(ks);
    std::ostringstream os;
    if (cfg.format == "json") {
        os << "{\"indices\":" << json_ints(ks) << ",\"genus\":" << json_genus(g)
           << ",\"value\":" << json_rational(v) << "}\n";
    } else if (cfg.format == "csv") {
        os << csv_header("k", static_cast<int>(ks.size())) << ",g,numerator,denominator\n"
           << csv_ints(ks) << "," << (g ? std::to_string(*g) : "") << "," << v.numerator().get_str()
           << "," << v.denominator().get_str() << "\n";
    } else {
        os << v << " " << (g ? "g=" + std::to_string(*g) : "(dimension constraint)") << "\n";
    }
    return os.str();
}

std::string render_table(const Config &cfg, const CorrelatorTable &t) {
    auto entries = t.sorted_entries();
    std::ostringstream os;
    if (cfg.format == "json") {
        os << "[";
        bool first = true;
        for (const auto &[ks, v] : entries) {
            os << (first ? "\n" : ",\n") << "{\"indices\":" << json_ints(ks)
               << ",\"genus\":" << json_genus(genus_of(ks)) << ",\"value\":" << json_rational(v)
               << "}";
            first = false;
        }
        os << (first ? "]\n" : "\n]\n");
    } else if (cfg.format == "csv") {
        os << csv_header("k", t.n) << ",g,numerator,denominator\n";
        for (const auto &[ks, v] : entries)
            os << csv_ints(ks) << "," << *genus_of(ks) << "," << v.numerator().get_str() << ","
               << v.denominator().get_str() << "\n";
    } else {
        for (const auto &[ks, v] : entries)
            os << bracket(ks) << " = " << v << " g=" << *genus_of(ks) << "\n";
    }
    return os.str();
}

std::string render_kappa(const Config &cfg, const Partition &lambda, const std::vector<int> &ks) {
    auto g = mixed_genus(lambda, ks);
    Rational v = mixed_correlator(lambda, ks);
    Rational s = v / Rational(lambda.multiplicity_factorial());
    std::ostringstream os;
    if (cfg.format == "json") {
        os << "{\"kappa\":" << json_ints(lambda.parts()) << ",\"indices\":" << json_ints(ks)
           << ",\"genus\":" << json_genus(g) << ",\"value\":" << json_rational(v)
           << ",\"s_coefficient\":" << json_rational(s) << "}\n";
    } else if (cfg.format == "csv") {
        os << "kappa,indices,g,numerator,denominator,s_numerator,s_denominator\n"
           << "\"" << csv_ints(lambda.parts()) << "\",\"" << csv_ints(ks) << "\","
           << (g ? std::to_string(*g) : "") << "," << v.numerator().get_str() << ","
           << v.denominator().get_str() << "," << s.numerator().get_str() << ","
           << s.denominator().get_str() << "\n";
    } else {
        os << bracket(ks, &lambda) << " = " << v << " "
           << (g ? "g=" + std::to_string(*g) : "(dimension constraint)")
           << " s-coefficient=" << s << "\n";
    }
    return os.str();
}

std::string render_wp(const Config &cfg, int g, int n, const std::vector<WPEntry> &entries) {
    std::ostringstream os;
    if (cfg.format == "json") {
        os << "{\"g\":" << g << ",\"n\":" << n << ",\"entries\":[";
        bool first = true;
        for (const auto &e : entries) {
            os << (first ? "\n" : ",\n") << "{\"d\":" << e.d << ",\"indices\":" << json_ints(e.ks)
               << ",\"value\":" << json_rational(e.value)
               << ",\"w\":" << json_rational(e.w_coefficient)
               << ",\"v\":" << json_rational(e.v_coefficient) << "}";
            first = false;
        }
        os << (first ? "]}\n" : "\n]}\n");
    } else if (cfg.format == "csv") {
        os << "d" << (n ? "," + csv_header("k", n) : "")
           << ",numerator,denominator,w_numerator,w_denominator,v_numerator,v_denominator\n";
        for (const auto &e : entries)
            os << e.d << (n ? "," + csv_ints(e.ks) : "") << "," << e.value.numerator().get_str()
               << "," << e.value.denominator().get_str() << ","
               << e.w_coefficient.numerator().get_str() << ","
               << e.w_coefficient.denominator().get_str() << ","
               << e.v_coefficient.numerator().get_str() << ","
               << e.v_coefficient.denominator().get_str() << "\n";
    } else {
        os << "W_{" << g << "," << n << "}: coefficient of s^d prod z_i^(-2k_i-2)\n";
        for (const auto &e : entries) {
            os << "  d=" << e.d << " k=(" << csv_ints(e.ks) << ")  W " << e.w_coefficient
               << "  v " << e.v_coefficient << "  " << bracket(e.ks) << " with kappa_1^" << e.d
               << " = " << e.value << "\n";
        }
    }
    return os.str();
}

std::string json_cq(const CQForm &f, int floor) {
    auto poly = [](const std::map<int, Rational> &p) {
        std::string s = "[";
        bool first = true;
        for (const auto &[e, c] : p) {
            s += (first ? "" : ",") + std::string("{\"power\":") + std::to_string(e) +
                 ",\"coeff\":" + json_rational(c) + "}";
            first = false;
        }
        return s + "]";
    };
    RationalSeries x = f.expand(floor);
    std::string s = "[";
    bool first = true;
    for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
        s += (first ? "" : ",") + std::string("{\"power\":") + std::to_string(it->first) +
             ",\"coeff\":" + json_rational(it->second) + "}";
        first = false;
    }
    s += "]";
    return "{\"c\":" + poly(f.c) + ",\"q\":" + poly(f.q) + ",\"expansion\":" + s +
           ",\"known_through\":" + std::to_string(floor) + "}";
}

std::string render_wave(const Config &cfg, const DeformedWavePair &w, int order) {
    const int floor = -order;
    std::ostringstream os;
    if (cfg.format == "json") {
        os << "{\"lambda\":" << json_ints(w.lambda.parts()) << ",\"A\":" << json_cq(w.A, floor)
           << ",\"B\":" << json_cq(w.B, floor) << "}\n";
    } else if (cfg.format == "csv") {
        os << "function,power,numerator,denominator\n";
        for (const auto &[name, f] : {std::pair{"A", &w.A}, std::pair{"B", &w.B}}) {
            RationalSeries x = f->expand(floor);
            for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it)
                os << name << "," << it->first << "," << it->second.numerator().get_str() << ","
                   << it->second.denominator().get_str() << "\n";
        }
    } else {
        const std::string l = w.lambda.to_string();
        os << "A^" << l << " = " << w.A.to_string() << "\n";
        os << "      = " << w.A.expand(floor).to_string() << "\n";
        os << "B^" << l << " = " << w.B.to_string() << "\n";
        os << "      = " << w.B.expand(floor).to_string() << "\n";
    }
    return os.str();
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Exact KdV tau-function correlators and intersection numbers"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--out", cfg.out_path, "Write output to this file");
    app.add_option("--depth", cfg.depth, "Depth of M in powers of z^-2 (may only deepen)")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--verify", cfg.verify, "Recompute at doubled depth and compare");
    app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1, 256));

    std::string tau_indices;
    auto *tau = app.add_subcommand("tau", "Single correlator <tau_k1 ... tau_kn>");
    tau->add_option("indices", tau_indices, "Comma-separated indices")->required();

    int table_n = 0, table_kmax = 0;
    auto *table = app.add_subcommand("table", "All nonzero n-point correlators up to k_max");
    table->add_option("n", table_n, "Number of insertions (>= 2)")->required();
    table->add_option("k_max", table_kmax, "Largest index")->required();

    std::string kappa_lambda, kappa_tau;
    auto *kappa = app.add_subcommand("kappa", "Mixed correlator <kappa_lambda tau_k...>");
    kappa->add_option("lambda", kappa_lambda, "Comma-separated kappa indices")->required();
    kappa->add_option("tau", kappa_tau, "Comma-separated psi indices (may be empty)");

    int wp_g = 0, wp_n = 0;
    auto *wp = app.add_subcommand("wp", "Weil-Petersson volume coefficients W_{g,n}, v_{g,n}");
    wp->add_option("g", wp_g, "Genus")->required();
    wp->add_option("n", wp_n, "Number of marked points")->required();

    std::string wave_lambda;
    int wave_order = 10;
    auto *wave = app.add_subcommand("wave", "Deformed wave functions A^lambda, B^lambda");
    wave->add_option("lambda", wave_lambda, "Comma-separated partition (empty for ())");
    wave->add_option("--order", wave_order, "Expand through z^-order")->check(CLI::NonNegativeNumber);

    SelftestOptions st;
    auto *selftest = app.add_subcommand("selftest", "Identity suite and table spot-checks");
    selftest->add_flag("--corrupt-c1", st.corrupt_c1, "Perturb C_1 before the checks");
    selftest->add_flag("--shallow", st.shallow, "Build the doubling-check table too shallow");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*tau) {
            auto ks = parse_list(tau_indices, "indices");
            if (ks.empty())
                throw UsageError("at least one index is required");
            if (ks.size() > 8)
                throw UsageError("at most 8 indices are supported");
            emit(cfg, render_tau(cfg, ks), out);
        } else if (*table) {
            if (table_n < 2 || table_n > 8)
                throw UsageError("table needs 2 <= n <= 8");
            if (table_kmax < 0)
                throw UsageError("k_max must be nonnegative");
            TableOptions topt;
            topt.workers = cfg.workers;
            topt.depth = cfg.depth;
            CorrelatorTable t = n_point_table(table_n, table_kmax, topt);
            if (cfg.verify) {
                VerifyReport r = verify_table(t, cfg.workers);
                err << "doubling check: depth " << r.depth << " vs " << r.doubled_depth << ", "
                    << r.mismatches << " mismatches\n";
                if (!r.ok())
                    return 1;
            }
            emit(cfg, render_table(cfg, t), out);
        } else if (*kappa) {
            auto parts = parse_list(kappa_lambda, "kappa indices");
            for (int p : parts)
                if (p == 0)
                    throw UsageError("kappa indices must be positive");
            auto ks = parse_list(kappa_tau, "indices");
            if (ks.size() + parts.size() > 8)
                throw UsageError("too many insertions");
            emit(cfg, render_kappa(cfg, Partition(parts), ks), out);
        } else if (*wp) {
            if (wp_g < 0 || wp_n < 0 || 3 * wp_g - 3 + wp_n < 0)
                throw UsageError("wp needs 3g - 3 + n >= 0");
            if (3 * wp_g - 3 + 2 * wp_n > 8)
                throw UsageError("wp supports at most 8 insertions after expanding kappa_1^d");
            emit(cfg, render_wp(cfg, wp_g, wp_n, wp_volume_coefficients(wp_g, wp_n)), out);
        } else if (*wave) {
            auto parts = parse_list(wave_lambda, "partition");
            for (int p : parts)
                if (p == 0)
                    throw UsageError("partition parts must be positive");
            emit(cfg, render_wave(cfg, deformed_wave(Partition(parts)), wave_order), out);
        } else if (*selftest) {
            st.workers = cfg.workers;
            auto results = run_selftest(st);
            std::ostringstream os;
            bool ok = true;
            for (const auto &r : results) {
                os << (r.ok ? "PASS " : "FAIL ") << r.name;
                if (!r.ok)
                    os << ": " << r.detail;
                os << "\n";
                ok = ok && r.ok;
            }
            emit(cfg, os.str(), out);
            return ok ? 0 : 1;
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace kdvtau::tools
