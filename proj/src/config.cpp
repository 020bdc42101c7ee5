#include "dynamo/config.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "dynamo/poly.hpp"

namespace dynamo {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    out.erase(std::remove_if(out.begin(), out.end(), [](const std::string& x) { return x.empty(); }),
              out.end());
    return out;
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
    if (s.empty()) return false;
    std::uint64_t v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        if (v > (UINT64_MAX - 9) / 10) return false;
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    out = v;
    return true;
}

}  // namespace

config_error::config_error(std::vector<std::string> problems)
    : std::runtime_error([&problems] {
          std::ostringstream os;
          os << "invalid config:";
          for (const auto& p : problems) os << "\n  - " << p;
          return os.str();
      }()),
      issues(std::move(problems)) {}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::vector<std::string> issues;
    bool saw_p = false, saw_k = false, saw_n = false, saw_dim = false;
    bool saw_max_period = false, saw_depth = false, saw_lookahead = false;
    bool saw_degree_bound = false, saw_seed = false;

    std::istringstream in(text);
    std::string line;
    unsigned lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            issues.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        auto scalar_u64 = [&](std::uint64_t& slot, bool& seen, std::uint64_t min_v) {
            if (seen) {
                issues.push_back("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
                return;
            }
            std::uint64_t v;
            if (!parse_u64(value, v) || v < min_v) {
                issues.push_back("line " + std::to_string(lineno) + ": bad value for '" + key +
                                 "'");
                return;
            }
            slot = v;
            seen = true;
        };
        auto scalar_unsigned = [&](unsigned& slot, bool& seen, std::uint64_t min_v) {
            std::uint64_t v = slot;
            bool was = seen;
            scalar_u64(v, seen, min_v);
            if (seen && !was) {
                if (v > 1u << 30) {
                    issues.push_back("line " + std::to_string(lineno) + ": value of '" + key +
                                     "' too large");
                    return;
                }
                slot = static_cast<unsigned>(v);
            }
        };

        if (key == "p") {
            scalar_u64(cfg.p, saw_p, 2);
        } else if (key == "k") {
            scalar_unsigned(cfg.k, saw_k, 1);
        } else if (key == "N") {
            scalar_unsigned(cfg.precision, saw_n, 1);
        } else if (key == "dim") {
            scalar_unsigned(cfg.dim, saw_dim, 1);
        } else if (key == "map") {
            if (value.empty())
                issues.push_back("line " + std::to_string(lineno) + ": empty map component");
            else
                cfg.map_texts.push_back(value);
        } else if (key == "variety") {
            if (value.empty())
                issues.push_back("line " + std::to_string(lineno) + ": empty variety generator");
            else
                cfg.variety_texts.push_back(value);
        } else if (key == "point") {
            for (auto& coord : split_list(value)) cfg.point_texts.push_back(coord);
        } else if (key == "degrees") {
            for (auto& d : split_list(value)) {
                std::uint64_t v;
                if (!parse_u64(d, v) || v < 1 || v > 64)
                    issues.push_back("line " + std::to_string(lineno) + ": bad degree '" + d + "'");
                else
                    cfg.degrees.push_back(static_cast<unsigned>(v));
            }
        } else if (key == "max_period") {
            scalar_unsigned(cfg.max_period, saw_max_period, 1);
        } else if (key == "depth") {
            scalar_unsigned(cfg.depth, saw_depth, 0);
        } else if (key == "lookahead") {
            scalar_unsigned(cfg.lookahead, saw_lookahead, 0);
        } else if (key == "degree_bound") {
            scalar_unsigned(cfg.degree_bound, saw_degree_bound, 1);
        } else if (key == "seed") {
            scalar_u64(cfg.seed, saw_seed, 0);
        } else {
            issues.push_back("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }

    if (!saw_p) issues.push_back("missing required key 'p'");
    if (!saw_dim) issues.push_back("missing required key 'dim'");
    if (cfg.map_texts.empty()) issues.push_back("missing required key 'map'");

    if (saw_p && !is_prime_u64(cfg.p)) issues.push_back("p is not prime");

    ContextPtr ctx;
    if (issues.empty()) {
        try {
            ctx = PAdicContext::make(cfg.p, cfg.k, cfg.precision);
        } catch (const std::exception& e) {
            issues.push_back(std::string("cannot build coefficient ring: ") + e.what());
        }
    }
    if (ctx) {
        if (cfg.map_texts.size() != cfg.dim)
            issues.push_back("map has " + std::to_string(cfg.map_texts.size()) +
                             " components, expected dim = " + std::to_string(cfg.dim));
        auto try_parse = [&](const std::string& what, const std::string& text, unsigned dim) {
            try {
                parse_polynomial(text, ctx, dim);
            } catch (const std::exception& e) {
                issues.push_back(what + " '" + text + "': " + e.what());
            }
        };
        for (const auto& m : cfg.map_texts) try_parse("map", m, cfg.dim);
        for (const auto& v : cfg.variety_texts) try_parse("variety", v, cfg.dim);
        for (const auto& c : cfg.point_texts) try_parse("point coordinate", c, 0);
        if (!cfg.point_texts.empty() && cfg.point_texts.size() != cfg.dim)
            issues.push_back("point has " + std::to_string(cfg.point_texts.size()) +
                             " coordinates, expected dim = " + std::to_string(cfg.dim));
        if (cfg.k > 1) {
            for (unsigned d : cfg.degrees)
                if (d != cfg.k)
                    issues.push_back(
                        "degree lists other than {k} require k = 1 (coefficients must embed)");
        }
    }

    if (!issues.empty()) throw config_error(std::move(issues));
    return cfg;
}

std::string render_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "p = " << cfg.p << "\n";
    os << "k = " << cfg.k << "\n";
    os << "N = " << cfg.precision << "\n";
    os << "dim = " << cfg.dim << "\n";
    for (const auto& m : cfg.map_texts) os << "map = " << m << "\n";
    for (const auto& v : cfg.variety_texts) os << "variety = " << v << "\n";
    if (!cfg.point_texts.empty()) {
        os << "point = ";
        for (std::size_t i = 0; i < cfg.point_texts.size(); ++i) {
            if (i) os << ",";
            os << cfg.point_texts[i];
        }
        os << "\n";
    }
    if (!cfg.degrees.empty()) {
        os << "degrees = ";
        for (std::size_t i = 0; i < cfg.degrees.size(); ++i) {
            if (i) os << ",";
            os << cfg.degrees[i];
        }
        os << "\n";
    }
    os << "max_period = " << cfg.max_period << "\n";
    os << "depth = " << cfg.depth << "\n";
    os << "lookahead = " << cfg.lookahead << "\n";
    os << "degree_bound = " << cfg.degree_bound << "\n";
    os << "seed = " << cfg.seed << "\n";
    return os.str();
}

}  // namespace dynamo
