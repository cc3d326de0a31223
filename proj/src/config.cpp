#include "iwt/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "iwt/gm.hpp"
#include "iwt/hamlab/integrate.hpp"
#include "iwt/hamlab/models.hpp"

namespace iwt {

namespace {

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s, int line) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + s + "'", line);
    }
    if (pos != s.size()) throw ConfigError("trailing characters after number '" + s + "'", line);
    return v;
}

long long parse_int(const std::string& s, int line) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError("expected an integer, got '" + s + "'", line);
    }
    if (pos != s.size()) throw ConfigError("trailing characters after integer '" + s + "'", line);
    return v;
}

bool parse_bool(const std::string& s, int line) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ConfigError("expected true/false, got '" + s + "'", line);
}

std::vector<double> parse_list(const std::string& s, int line) {
    std::vector<double> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(parse_double(tok, line));
    if (out.empty()) throw ConfigError("expected a list of numbers", line);
    return out;
}

struct Entry {
    std::function<void(RunConfig&, const std::string&, int)> set;
    std::function<std::string(const RunConfig&)> get;
};

template <typename Ref>
Entry dbl(Ref ref) {
    return {[ref](RunConfig& c, const std::string& v, int ln) { ref(c) = parse_double(v, ln); },
            [ref](const RunConfig& c) { return fmt_double(ref(const_cast<RunConfig&>(c))); }};
}

template <typename Ref>
Entry uint(Ref ref) {
    return {[ref](RunConfig& c, const std::string& v, int ln) {
                const long long x = parse_int(v, ln);
                if (x < 0) throw ConfigError("value must be nonnegative", ln);
                ref(c) = static_cast<std::size_t>(x);
            },
            [ref](const RunConfig& c) {
                return std::to_string(ref(const_cast<RunConfig&>(c)));
            }};
}

template <typename Ref>
Entry integer(Ref ref) {
    return {[ref](RunConfig& c, const std::string& v, int ln) {
                ref(c) = static_cast<int>(parse_int(v, ln));
            },
            [ref](const RunConfig& c) {
                return std::to_string(ref(const_cast<RunConfig&>(c)));
            }};
}

template <typename Ref>
Entry boolean(Ref ref) {
    return {[ref](RunConfig& c, const std::string& v, int ln) { ref(c) = parse_bool(v, ln); },
            [ref](const RunConfig& c) {
                return ref(const_cast<RunConfig&>(c)) ? "true" : "false";
            }};
}

template <typename Ref>
Entry str(Ref ref) {
    return {[ref](RunConfig& c, const std::string& v, int) { ref(c) = v; },
            [ref](const RunConfig& c) { return ref(const_cast<RunConfig&>(c)); }};
}

template <typename Ref>
Entry list(Ref ref) {
    return {[ref](RunConfig& c, const std::string& v, int ln) { ref(c) = parse_list(v, ln); },
            [ref](const RunConfig& c) {
                std::string out;
                for (double v : ref(const_cast<RunConfig&>(c))) {
                    if (!out.empty()) out += ' ';
                    out += fmt_double(v);
                }
                return out;
            }};
}

#define REF(expr) [](RunConfig& c) -> decltype(c.expr)& { return c.expr; }

using Section = std::vector<std::pair<std::string, Entry>>;

const std::vector<std::pair<std::string, Section>>& schema() {
    static const std::vector<std::pair<std::string, Section>> s = {
        {"physical",
         {{"f", dbl(REF(physical.f))},
          {"g", dbl(REF(physical.g))},
          {"N", dbl(REF(physical.N))},
          {"rho0", dbl(REF(physical.rho0))}}},
        {"grid",
         {{"k_min", dbl(REF(grid.k_min))},
          {"k_max", dbl(REF(grid.k_max))},
          {"nk", uint(REF(grid.nk))},
          {"m_min", dbl(REF(grid.m_min))},
          {"m_max", dbl(REF(grid.m_max))},
          {"nm", uint(REF(grid.nm))}}},
        {"quad",
         {{"refinement", integer(REF(quad.refinement))},
          {"mu_per_decade", integer(REF(quad.mu_per_decade))},
          {"gl_points", integer(REF(quad.gl_points))},
          {"scan_points", integer(REF(quad.scan_points))},
          {"boundary_map", boolean(REF(quad.boundary_map))},
          {"mixed_sign_m", boolean(REF(quad.mixed_sign_m))},
          {"high_frequency_omega", boolean(REF(quad.high_frequency_omega))},
          {"k_prefactor_quarter", boolean(REF(quad.k_prefactor_quarter))},
          {"kernel_norm", dbl(REF(quad.kernel_norm))},
          {"cutoff_extend", dbl(REF(quad.cutoff_extend))}}},
        {"scan",
         {{"x_min", dbl(REF(scan.x_min))},
          {"x_max", dbl(REF(scan.x_max))},
          {"nx", uint(REF(scan.nx))},
          {"y_min", dbl(REF(scan.y_min))},
          {"y_max", dbl(REF(scan.y_max))},
          {"ny", uint(REF(scan.ny))},
          {"amplitude", dbl(REF(scan.amplitude))},
          {"probes_k", uint(REF(scan.probes_k))},
          {"probes_m", uint(REF(scan.probes_m))}}},
        {"law",
         {{"amplitude", dbl(REF(law.amplitude))},
          {"x", dbl(REF(law.x))},
          {"y", dbl(REF(law.y))},
          {"equipartition", boolean(REF(law.equipartition))}}},
        {"locality",
         {{"factors", list(REF(locality.factors))},
          {"tolerance", dbl(REF(locality.tolerance))},
          {"node_ik", integer(REF(locality.node_ik))},
          {"node_im", integer(REF(locality.node_im))}}},
        {"evolve",
         {{"dt", dbl(REF(evolve.dt))},
          {"steps", uint(REF(evolve.steps))},
          {"snapshot_every", uint(REF(evolve.snapshot_every))},
          {"rate_cap", dbl(REF(evolve.rate_cap))},
          {"stiffness_cap", dbl(REF(evolve.stiffness_cap))},
          {"bump_amplitude", dbl(REF(evolve.bump_amplitude))},
          {"bump_k", dbl(REF(evolve.bump_k))},
          {"bump_m", dbl(REF(evolve.bump_m))},
          {"bump_width", dbl(REF(evolve.bump_width))}}},
        {"triads",
         {{"count", uint(REF(triads.count))},
          {"high_frequency", boolean(REF(triads.high_frequency))}}},
        {"gm",
         {{"E", dbl(REF(gm.E))},
          {"m_star", dbl(REF(gm.m_star))},
          {"wt_amplitude", dbl(REF(gm.wt_amplitude))},
          {"fit_k_lo", dbl(REF(gm.fit_k_lo))},
          {"fit_k_hi", dbl(REF(gm.fit_k_hi))},
          {"fit_m_lo", dbl(REF(gm.fit_m_lo))},
          {"fit_m_hi", dbl(REF(gm.fit_m_hi))},
          {"fit_nk", uint(REF(gm.fit_nk))},
          {"fit_nm", uint(REF(gm.fit_nm))}}},
        {"hamlab",
         {{"model", str(REF(hamlab.model))},
          {"nx", uint(REF(hamlab.nx))},
          {"ny", uint(REF(hamlab.ny))},
          {"nr", uint(REF(hamlab.nr))},
          {"amplitude", dbl(REF(hamlab.amplitude))},
          {"dt", dbl(REF(hamlab.dt))},
          {"steps", uint(REF(hamlab.steps))},
          {"scheme", str(REF(hamlab.scheme))},
          {"mode_x", integer(REF(hamlab.mode[0]))},
          {"mode_y", integer(REF(hamlab.mode[1]))},
          {"mode_r", integer(REF(hamlab.mode[2]))},
          {"q0", dbl(REF(hamlab.q0))},
          {"snapshot_every", uint(REF(hamlab.snapshot_every))}}},
        {"run",
         {{"seed",
           {[](RunConfig& c, const std::string& v, int ln) {
                const long long x = parse_int(v, ln);
                if (x < 0) throw ConfigError("seed must be nonnegative", ln);
                c.run.seed = static_cast<unsigned>(x);
            },
            [](const RunConfig& c) { return std::to_string(c.run.seed); }}},
          {"threads", integer(REF(run.threads))},
          {"deterministic", boolean(REF(run.deterministic))},
          {"output", str(REF(run.output))}}},
    };
    return s;
}

#undef REF

const Entry* find_entry(const std::string& section, const std::string& key) {
    for (const auto& [name, entries] : schema()) {
        if (name != section) continue;
        for (const auto& [k, entry] : entries)
            if (k == key) return &entry;
        return nullptr;
    }
    return nullptr;
}

bool section_exists(const std::string& section) {
    for (const auto& [name, entries] : schema())
        if (name == section) return true;
    return false;
}

}  // namespace

QuadratureSettings RunConfig::quadrature() const {
    QuadratureSettings q = QuadratureSettings::for_grid(grid.build(), quad.refinement,
                                                        quad.cutoff_extend);
    q.mu_per_decade = quad.mu_per_decade;
    q.gl_points = quad.gl_points;
    q.scan_points = quad.scan_points;
    q.boundary_map = quad.boundary_map;
    q.mixed_sign_m = quad.mixed_sign_m;
    q.high_frequency_omega = quad.high_frequency_omega;
    q.k_prefactor_quarter = quad.k_prefactor_quarter;
    q.kernel_norm = quad.kernel_norm;
    q.validate();
    return q;
}

void RunConfig::validate() const {
    try {
        physical.validate();
        quadrature();  // validates grid + quad jointly
        if (!law.equipartition) PowerLawSpectrum{law.amplitude, law.x, law.y}.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    if (!(scan.x_min <= scan.x_max) || !(scan.y_min <= scan.y_max))
        throw ConfigError("scan: exponent ranges are inverted");
    if (scan.nx < 1 || scan.ny < 1) throw ConfigError("scan: nx and ny must be >= 1");
    if (scan.probes_k < 1 || scan.probes_m < 1) throw ConfigError("scan: probe counts must be >= 1");
    if (!(scan.amplitude > 0.0)) throw ConfigError("scan.amplitude must be > 0");

    if (locality.factors.empty()) throw ConfigError("locality.factors must be nonempty");
    for (std::size_t i = 0; i < locality.factors.size(); ++i) {
        if (!(locality.factors[i] >= 1.0)) throw ConfigError("locality.factors must be >= 1");
        if (i > 0 && !(locality.factors[i] > locality.factors[i - 1]))
            throw ConfigError("locality.factors must be ascending");
    }
    if (!(locality.tolerance > 0.0)) throw ConfigError("locality.tolerance must be > 0");
    if (locality.node_ik >= static_cast<int>(grid.nk) ||
        locality.node_im >= static_cast<int>(grid.nm))
        throw ConfigError("locality node indices exceed the grid");

    if (!(evolve.dt > 0.0)) throw ConfigError("evolve.dt must be > 0");
    if (evolve.steps < 1) throw ConfigError("evolve.steps must be >= 1");
    if (!(evolve.rate_cap > 0.0) || !(evolve.stiffness_cap > 0.0))
        throw ConfigError("evolve caps must be > 0");
    if (evolve.bump_amplitude < 0.0) throw ConfigError("evolve.bump_amplitude must be >= 0");
    if (evolve.bump_amplitude > 0.0 &&
        (!(evolve.bump_k > 0.0) || !(evolve.bump_m > 0.0) || !(evolve.bump_width > 0.0)))
        throw ConfigError("evolve bump parameters must be positive");

    if (triads.count < 1) throw ConfigError("triads.count must be >= 1");

    try {
        GMParams gmp{gm.E, gm.m_star, physical};
        gmp.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(gm.wt_amplitude > 0.0)) throw ConfigError("gm.wt_amplitude must be > 0");
    if (!(gm.fit_k_lo < gm.fit_k_hi) || !(gm.fit_m_lo < gm.fit_m_hi))
        throw ConfigError("gm fit windows are inverted");
    if (gm.fit_nk < 4 || gm.fit_nm < 4) throw ConfigError("gm fit windows need >= 4 nodes per axis");

    try {
        hamlab::model_kind_from_string(hamlab.model);
        hamlab::scheme_from_string(hamlab.scheme);
        hamlab::BoxGrid box{hamlab.nx, hamlab.ny, hamlab.nr};
        box.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(hamlab.dt > 0.0)) throw ConfigError("hamlab.dt must be > 0");
    if (hamlab.steps < 1) throw ConfigError("hamlab.steps must be >= 1");
    if (!(hamlab.amplitude > 0.0)) throw ConfigError("hamlab.amplitude must be > 0");

    if (run.threads < 0) throw ConfigError("run.threads must be >= 0");
    if (run.output.empty()) throw ConfigError("run.output must be nonempty");
}

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError("malformed section header '" + s + "'", line);
            section = trim(s.substr(1, s.size() - 2));
            if (!section_exists(section))
                throw ConfigError("unknown section '" + section + "'", line);
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got '" + s + "'", line);
        if (section.empty()) throw ConfigError("key outside of any section", line);
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        const Entry* entry = find_entry(section, key);
        if (!entry) throw ConfigError("unknown key '" + section + "." + key + "'", line);
        entry->set(config, value, line);
    }
    config.validate();
    return config;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string to_text(const RunConfig& config) {
    std::ostringstream out;
    for (const auto& [name, entries] : schema()) {
        out << '[' << name << "]\n";
        for (const auto& [key, entry] : entries) out << key << " = " << entry.get(config) << '\n';
    }
    return out.str();
}

bool operator==(const RunConfig& a, const RunConfig& b) { return to_text(a) == to_text(b); }

}  // namespace iwt
