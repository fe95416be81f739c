#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>

#include "lhm/errors.hpp"
#include "lhm/params.hpp"
#include "lhm/response.hpp"

// Versioned golden-data table: parameter-point hash -> oracle coherences.
// Plain text, one record per line, regenerated by `golden regen`.

namespace lhm::golden {

inline constexpr const char* format_version = "lhm-golden-v1";

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace detail

// Canonical parameter-point string: fixed field order, max-precision decimals.
inline std::string canonical_point(const DecayRates& r, const DriveConfig& d) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << r.gamma_scale << '|' << r.gamma43 << '|' << r.gamma42 << '|' << r.gamma31
       << '|' << r.gamma21 << '|' << r.gamma1 << '|' << r.gamma_c << '|'
       << d.omega_pe << '|' << d.omega_pm << '|' << d.omega_c << '|' << d.omega_s
       << '|' << d.delta_p << '|' << d.delta_c << '|' << d.delta_m << '|' << d.theta;
    return os.str();
}

inline std::uint64_t point_hash(const DecayRates& r, const DriveConfig& d) {
    return detail::fnv1a(canonical_point(r, d));
}

using Table = std::map<std::uint64_t, Coherences>;

inline void write(const Table& t, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::ios_base::failure("golden::write: cannot open " + path);
    f << format_version << '\n';
    f << std::setprecision(17);
    for (const auto& [hash, coh] : t)
        f << hash << ' ' << coh.rho43.real() << ' ' << coh.rho43.imag() << ' '
          << coh.rho21.real() << ' ' << coh.rho21.imag() << '\n';
    if (!f)
        throw std::ios_base::failure("golden::write: write failed for " + path);
}

inline Table read(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw std::ios_base::failure("golden::read: cannot open " + path);
    std::string version;
    if (!std::getline(f, version) || version != format_version)
        throw config_error("golden::read: unsupported format version in " + path);
    Table t;
    std::uint64_t hash;
    double a, b, c, d;
    while (f >> hash >> a >> b >> c >> d)
        t[hash] = Coherences{{a, b}, {c, d}};
    return t;
}

} // namespace lhm::golden
