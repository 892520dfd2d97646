#include "qpartial/geometry.hpp"

#include <cmath>
#include <istream>
#include <sstream>

namespace qpartial {

double SearchGeometry::block_scale() const {
    return std::sqrt(static_cast<double>(b) / static_cast<double>(tau));
}

SearchGeometry validate_geometry(std::int64_t N, std::int64_t K, std::int64_t t,
                                 std::int64_t tau) {
    if (N <= 0 || K <= 0 || t <= 0 || tau <= 0)
        throw DegenerateError("geometry parameters must be positive");
    if (N % K != 0)
        throw NonDivisibleError("K = " + std::to_string(K) + " does not divide N = " +
                                std::to_string(N));
    SearchGeometry g;
    g.N = N;
    g.K = K;
    g.b = N / K;
    g.t = t;
    g.tau = tau;
    if (t >= K)
        throw DegenerateError("t >= K leaves no non-target block");
    if (tau >= g.b)
        throw DegenerateError("tau >= b leaves no non-target item inside a target block");
    if (t * tau >= N)
        throw DegenerateError("t*tau >= N");
    g.angles.theta1 = std::asin(std::sqrt(static_cast<double>(t) * tau / N));
    g.angles.theta2 = std::asin(std::sqrt(static_cast<double>(tau) / g.b));
    g.angles.gamma = std::asin(std::sqrt(static_cast<double>(t) / K));
    return g;
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    auto trim = [](std::string s) {
        const char* ws = " \t\r\n";
        auto a = s.find_first_not_of(ws);
        if (a == std::string::npos) return std::string();
        auto b = s.find_last_not_of(ws);
        return s.substr(a, b - a + 1);
    };
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        kv[key] = val;
    }
    return kv;
}

SearchGeometry geometry_from_key_values(const std::map<std::string, std::string>& kv) {
    auto want = [&](const char* key) -> std::int64_t {
        auto it = kv.find(key);
        if (it == kv.end()) throw ConfigError(std::string("missing key: ") + key);
        try {
            std::size_t pos = 0;
            long long v = std::stoll(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument(it->second);
            return v;
        } catch (const std::exception&) {
            throw ConfigError(std::string("bad integer for key ") + key + ": " + it->second);
        }
    };
    return validate_geometry(want("N"), want("K"), want("t"), want("tau"));
}

}  // namespace qpartial
