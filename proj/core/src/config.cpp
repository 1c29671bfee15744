#include "tjcct/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tjcct/errors.hpp"
#include "tjcct/units.hpp"

namespace tjcct {

using json = nlohmann::json;

namespace {

struct UnitEntry {
    std::string_view suffix;
    double scale;
};

struct DimensionInfo {
    std::string_view bare;   // unit of a bare number
    std::string_view si;     // unit written by the echo
    std::vector<UnitEntry> units;
};

const DimensionInfo& info(Dimension d) {
    static const DimensionInfo time{"s", "s", {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}}};
    static const DimensionInfo data{"Mb", "b", {{"b", 1.0}, {"bit", 1.0}, {"kb", 1e3}, {"Kb", 1e3}, {"Mb", 1e6}, {"Gb", 1e9}}};
    static const DimensionInfo freq{"GHz", "Hz", {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}}};
    static const DimensionInfo power{"dBm", "W", {{"W", 1.0}, {"mW", 1e-3}, {"dBm", 0.0}}};
    static const DimensionInfo bw{"MHz", "Hz", {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}}};
    static const DimensionInfo energy{"J", "J", {{"J", 1.0}, {"mJ", 1e-3}, {"kJ", 1e3}}};
    static const DimensionInfo length{"m", "m", {{"m", 1.0}, {"km", 1e3}}};
    static const DimensionInfo speed{"m/s", "m/s", {{"m/s", 1.0}, {"km/h", 1.0 / 3.6}}};
    switch (d) {
        case Dimension::time: return time;
        case Dimension::data: return data;
        case Dimension::frequency: return freq;
        case Dimension::power: return power;
        case Dimension::bandwidth: return bw;
        case Dimension::energy: return energy;
        case Dimension::length: return length;
        case Dimension::speed: return speed;
    }
    return time;
}

double apply_unit(double value, std::string_view unit, Dimension dim) {
    if (dim == Dimension::power && unit == "dBm") return units::dbm_to_watt(value);
    for (const UnitEntry& u : info(dim).units) {
        if (u.suffix == unit) return value * u.scale;
    }
    std::string known;
    for (const UnitEntry& u : info(dim).units) known += (known.empty() ? "" : ", ") + std::string(u.suffix);
    throw ConfigError("unknown unit '" + std::string(unit) + "' (expected one of " + known + ")");
}

std::string format_si(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace

double parse_quantity(std::string_view text, Dimension dim) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{}) throw ConfigError("not a quantity: '" + std::string(text) + "'");
    std::string_view unit(res.ptr, static_cast<std::size_t>(text.data() + text.size() - res.ptr));
    while (!unit.empty() && unit.front() == ' ') unit.remove_prefix(1);
    while (!unit.empty() && unit.back() == ' ') unit.remove_suffix(1);
    if (unit.empty()) unit = info(dim).bare;
    return apply_unit(value, unit, dim);
}

namespace {

/// Line of the first occurrence of `"key"` in the source; 0 if absent.
std::size_t line_of_key(std::string_view text, std::string_view key) {
    const std::string quoted = "\"" + std::string(key) + "\"";
    const auto pos = text.find(quoted);
    if (pos == std::string_view::npos) return 0;
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

struct Source {
    std::string_view text;
    std::string origin;

    [[noreturn]] void fail(const std::string& path, std::string_view key, const std::string& what) const {
        const std::size_t line = line_of_key(text, key);
        std::string where = origin;
        if (line > 0) where += ":" + std::to_string(line);
        throw ConfigError(where + ": " + path + ": " + what);
    }
};

/// Object reader that tracks consumed keys so leftovers can be rejected.
class Node {
public:
    Node(const json& j, std::string path, std::string key, const Source& src)
        : j_(j), path_(std::move(path)), key_(std::move(key)), src_(src) {}

    [[noreturn]] void fail(const std::string& what) const { src_.fail(path_, key_, what); }

    void opt(const std::string& key, const std::function<void(const Node&)>& f) {
        if (!j_.is_object()) fail("expected an object");
        seen_.insert(key);
        const auto it = j_.find(key);
        if (it == j_.end()) return;
        Node child(*it, path_.empty() ? key : path_ + "." + key, key, src_);
        try {
            f(child);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            child.fail(e.what());
        }
    }

    void done() const {
        if (!j_.is_object()) return;
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) {
                src_.fail(path_.empty() ? it.key() : path_ + "." + it.key(), it.key(), "unknown key");
            }
        }
    }

    [[nodiscard]] const json& raw() const { return j_; }
    [[nodiscard]] const std::string& path() const { return path_; }
    [[nodiscard]] const Source& source() const { return src_; }
    [[nodiscard]] const std::string& key() const { return key_; }

    [[nodiscard]] double number() const {
        if (j_.is_number()) return j_.get<double>();
        if (j_.is_string()) {
            const auto s = j_.get<std::string>();
            if (s == "inf") return std::numeric_limits<double>::infinity();
        }
        fail("expected a number");
    }

    [[nodiscard]] int integer() const {
        if (j_.is_number_integer()) return j_.get<int>();
        if (j_.is_number_float()) {
            const double v = j_.get<double>();
            if (v == std::floor(v) && std::abs(v) < 2e9) return static_cast<int>(v);
        }
        fail("expected an integer");
    }

    [[nodiscard]] bool boolean() const {
        if (!j_.is_boolean()) fail("expected true or false");
        return j_.get<bool>();
    }

    [[nodiscard]] std::string string() const {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }

    [[nodiscard]] double quantity(Dimension dim) const {
        try {
            if (j_.is_number()) return apply_unit(j_.get<double>(), info(dim).bare, dim);
            if (j_.is_string()) return parse_quantity(j_.get<std::string>(), dim);
        } catch (const ConfigError& e) {
            fail(e.what());
        }
        fail("expected a number or a quantity string");
    }

    [[nodiscard]] Vec2 point() const {
        if (!j_.is_array() || j_.size() != 2 || !j_[0].is_number() || !j_[1].is_number()) {
            fail("expected [x, y] in meters");
        }
        return {j_[0].get<double>(), j_[1].get<double>()};
    }

    /// {"min": a, "max": b} or [a, b].
    template <class Read>
    auto pair(Read read) const {
        using T = decltype(read(*this));
        T lo{};
        T hi{};
        if (j_.is_array()) {
            if (j_.size() != 2) fail("expected [min, max]");
            lo = read(Node(j_[0], path_ + ".min", key_, src_));
            hi = read(Node(j_[1], path_ + ".max", key_, src_));
        } else if (j_.is_object()) {
            Node self = *this;
            bool has_lo = false;
            bool has_hi = false;
            self.opt("min", [&](const Node& n) { lo = read(n); has_lo = true; });
            self.opt("max", [&](const Node& n) { hi = read(n); has_hi = true; });
            self.done();
            if (!has_lo || !has_hi) fail("range needs both min and max");
        } else {
            fail("expected a range");
        }
        return std::make_pair(lo, hi);
    }

    [[nodiscard]] Range range(Dimension dim) const {
        const auto [lo, hi] = pair([dim](const Node& n) { return n.quantity(dim); });
        return {lo, hi};
    }

    [[nodiscard]] Range plain_range() const {
        const auto [lo, hi] = pair([](const Node& n) { return n.number(); });
        return {lo, hi};
    }

    [[nodiscard]] IntRange int_range() const {
        const auto [lo, hi] = pair([](const Node& n) { return n.integer(); });
        return {lo, hi};
    }

private:
    const json& j_;
    std::string path_;
    std::string key_;
    const Source& src_;
    std::set<std::string> seen_;
};

void read_propulsion(Node n, PropulsionParams& p) {
    n.opt("blade_profile", [&](const Node& c) { p.blade_profile = c.number(); });
    n.opt("induced", [&](const Node& c) { p.induced = c.number(); });
    n.opt("induced_speed4", [&](const Node& c) { p.induced_speed4 = c.number(); });
    n.opt("parasite", [&](const Node& c) { p.parasite = c.number(); });
    n.opt("tip_speed", [&](const Node& c) { p.tip_speed = c.quantity(Dimension::speed); });
    n.done();
}

void read_terrestrial(Node n, TerrestrialSpec& s) {
    n.opt("position", [&](const Node& c) { s.position = c.point(); });
    n.opt("antenna_height", [&](const Node& c) { s.antenna_height = c.quantity(Dimension::length); });
    n.opt("core_capacity", [&](const Node& c) { s.core_capacity = c.range(Dimension::frequency); });
    n.opt("cores", [&](const Node& c) { s.cores = c.int_range(); });
    n.opt("energy_cap", [&](const Node& c) { s.energy_cap = c.quantity(Dimension::energy); });
    n.opt("price_cap", [&](const Node& c) { s.price_cap = c.number(); });
    n.opt("weight", [&](const Node& c) { s.weight = c.number(); });
    n.opt("capacitance", [&](const Node& c) { s.capacitance = c.number(); });
    n.done();
}

void read_aerial(Node n, AerialSpec& s) {
    n.opt("start", [&](const Node& c) { s.start = c.point(); });
    n.opt("destination", [&](const Node& c) { s.destination = c.point(); });
    n.opt("altitude", [&](const Node& c) { s.altitude = c.quantity(Dimension::length); });
    n.opt("max_speed", [&](const Node& c) { s.max_speed = c.quantity(Dimension::speed); });
    n.opt("core_capacity", [&](const Node& c) { s.core_capacity = c.range(Dimension::frequency); });
    n.opt("cores", [&](const Node& c) { s.cores = c.int_range(); });
    n.opt("energy_cap", [&](const Node& c) { s.energy_cap = c.quantity(Dimension::energy); });
    n.opt("price_cap", [&](const Node& c) { s.price_cap = c.number(); });
    n.opt("weight", [&](const Node& c) { s.weight = c.number(); });
    n.opt("capacitance", [&](const Node& c) { s.capacitance = c.number(); });
    n.opt("propulsion", [&](const Node& c) { read_propulsion(c, s.propulsion); });
    n.done();
}

template <class T, class Read>
void read_list(const Node& n, std::vector<T>& out, Read read) {
    if (!n.raw().is_array()) n.fail("expected a list");
    out.clear();
    for (std::size_t k = 0; k < n.raw().size(); ++k) {
        T item{};
        read(Node(n.raw()[k], n.path() + "[" + std::to_string(k) + "]", n.key(), n.source()), item);
        out.push_back(item);
    }
}

void read_root(Node root, ExperimentConfig& c) {
    ScenarioConfig& s = c.scenario;
    root.opt("clock", [&](Node n) {
        n.opt("slot_duration", [&](const Node& v) { s.clock.slot_duration = v.quantity(Dimension::time); });
        n.opt("epoch_length", [&](const Node& v) { s.clock.epoch_length = v.integer(); });
        n.opt("horizon", [&](const Node& v) { s.clock.horizon = v.integer(); });
        n.done();
    });
    root.opt("arena", [&](Node n) {
        n.opt("width", [&](const Node& v) { s.arena.width = v.quantity(Dimension::length); });
        n.opt("height", [&](const Node& v) { s.arena.height = v.quantity(Dimension::length); });
        n.done();
    });
    root.opt("mds", [&](Node n) {
        n.opt("count", [&](const Node& v) { s.md_count = v.integer(); });
        n.opt("cpu", [&](const Node& v) { s.md_cpu = v.range(Dimension::frequency); });
        n.opt("transmit_power", [&](const Node& v) { s.md_transmit_power = v.range(Dimension::power); });
        n.opt("energy_cap", [&](const Node& v) { s.md_energy_cap = v.quantity(Dimension::energy); });
        n.opt("budget", [&](const Node& v) { s.md_budget = v.number(); });
        n.opt("weight", [&](const Node& v) { s.md_weight = v.number(); });
        n.opt("capacitance", [&](const Node& v) { s.md_capacitance = v.number(); });
        n.opt("speed", [&](const Node& v) { s.md_speed = v.range(Dimension::speed); });
        n.opt("mobility_memory", [&](const Node& v) { s.mobility_memory = v.number(); });
        n.opt("mobility_std", [&](const Node& v) { s.mobility_std = v.quantity(Dimension::speed); });
        n.done();
    });
    root.opt("tasks", [&](Node n) {
        n.opt("arrival_probability", [&](const Node& v) { s.arrival_probability = v.number(); });
        n.opt("size", [&](const Node& v) { s.task_size = v.range(Dimension::data); });
        n.opt("cycles_per_bit", [&](const Node& v) { s.cycles_per_bit = v.plain_range(); });
        n.opt("deadline", [&](const Node& v) { s.deadline = v.range(Dimension::time); });
        n.done();
    });
    root.opt("terrestrial", [&](const Node& n) {
        read_list(n, s.terrestrial, [](const Node& v, TerrestrialSpec& t) { read_terrestrial(v, t); });
    });
    root.opt("aerial", [&](const Node& n) {
        read_list(n, s.aerial, [](const Node& v, AerialSpec& a) { read_aerial(v, a); });
    });
    root.opt("channel", [&](Node n) {
        ChannelParams& p = s.channel;
        n.opt("bandwidth", [&](const Node& v) { p.bandwidth = v.quantity(Dimension::bandwidth); });
        n.opt("noise_density_dbm_hz", [&](const Node& v) { p.noise_density_dbm_hz = v.number(); });
        n.opt("terrestrial_d1", [&](const Node& v) { p.terrestrial_d1 = v.quantity(Dimension::length); });
        n.opt("terrestrial_d2", [&](const Node& v) { p.terrestrial_d2 = v.quantity(Dimension::length); });
        n.opt("aerial_a", [&](const Node& v) { p.aerial_a = v.number(); });
        n.opt("aerial_b", [&](const Node& v) { p.aerial_b = v.number(); });
        n.opt("exponent_los", [&](const Node& v) { p.exponent_los = v.number(); });
        n.opt("exponent_nlos", [&](const Node& v) { p.exponent_nlos = v.number(); });
        n.opt("reference_gain_db", [&](const Node& v) { p.reference_gain_db = v.number(); });
        n.opt("nakagami_m_los", [&](const Node& v) { p.nakagami_m_los = v.number(); });
        n.opt("nakagami_m_nlos", [&](const Node& v) { p.nakagami_m_nlos = v.number(); });
        n.opt("shadow_sigma_los_db", [&](const Node& v) { p.shadow_sigma_los_db = v.number(); });
        n.opt("shadow_sigma_nlos_db", [&](const Node& v) { p.shadow_sigma_nlos_db = v.number(); });
        n.opt("mode", [&](const Node& v) {
            const std::string m = v.string();
            if (m == "expected") {
                p.mode = FadingMode::expected;
            } else if (m == "sampled") {
                p.mode = FadingMode::sampled;
            } else {
                v.fail("mode must be 'expected' or 'sampled'");
            }
        });
        n.done();
    });
    root.opt("bargaining", [&](Node n) {
        n.opt("max_iterations", [&](const Node& v) { s.bargain.max_iterations = v.integer(); });
        n.opt("horizon_rounds", [&](const Node& v) { s.bargain.horizon_rounds = v.integer(); });
        n.opt("price_sentinel", [&](const Node& v) { s.bargain.price_sentinel = v.number(); });
        n.done();
    });
    root.opt("trajectory", [&](Node n) {
        n.opt("tolerance", [&](const Node& v) { s.sca.tolerance = v.number(); });
        n.opt("max_iterations", [&](const Node& v) { s.sca.max_iterations = v.integer(); });
        n.done();
    });
    root.opt("experiment", [&](Node n) {
        n.opt("seeds", [&](const Node& v) {
            if (!v.raw().is_array()) v.fail("expected a list of seeds");
            c.seeds.clear();
            for (const json& x : v.raw()) {
                if (!x.is_number_unsigned()) v.fail("seeds must be non-negative integers");
                c.seeds.push_back(x.get<std::uint64_t>());
            }
        });
        n.opt("strategies", [&](const Node& v) {
            if (!v.raw().is_array()) v.fail("expected a list of strategy names");
            c.strategies.clear();
            for (const json& x : v.raw()) {
                if (!x.is_string()) v.fail("strategy names must be strings");
                try {
                    c.strategies.push_back(parse_strategy(x.get<std::string>()));
                } catch (const ConfigError& e) {
                    v.fail(e.what());
                }
            }
        });
        n.opt("sweep", [&](Node v) {
            v.opt("axis", [&](const Node& a) { c.sweep.axis = a.string(); });
            v.opt("grid", [&](const Node& g) {
                if (!g.raw().is_array()) g.fail("expected a list");
                c.sweep.grid.clear();
                for (std::size_t k = 0; k < g.raw().size(); ++k) {
                    c.sweep.grid.push_back(
                        Node(g.raw()[k], g.path() + "[" + std::to_string(k) + "]", g.key(), g.source())
                            .quantity(Dimension::data));
                }
            });
            v.done();
        });
        n.opt("output_dir", [&](const Node& v) { c.output_dir = v.string(); });
        n.opt("audit", [&](const Node& v) { c.audit = v.boolean(); });
        n.opt("threads", [&](const Node& v) { c.threads = v.integer(); });
        n.done();
    });
    root.done();
}

}  // namespace

void ExperimentConfig::validate() const {
    scenario.validate();
    if (seeds.empty()) throw ConfigError("experiment.seeds must not be empty");
    if (strategies.empty()) throw ConfigError("experiment.strategies must not be empty");
    if (!sweep.axis.empty() && sweep.axis != "task-size") {
        throw ConfigError("experiment.sweep.axis: only 'task-size' is supported");
    }
    if (!sweep.axis.empty() && sweep.grid.empty()) throw ConfigError("experiment.sweep.grid must not be empty");
    for (double m : sweep.grid) {
        if (!(m > 0.0)) throw ConfigError("experiment.sweep.grid values must be positive");
    }
    if (threads < 0) throw ConfigError("experiment.threads must be non-negative");
}

ExperimentConfig parse_config_text(std::string_view text, std::string_view origin) {
    Source src{text, std::string(origin)};
    json j;
    const bool blank = std::all_of(text.begin(), text.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
    if (blank) {
        j = json::object();
    } else {
        try {
            j = json::parse(text.begin(), text.end(), nullptr, true, true);
        } catch (const json::parse_error& e) {
            const auto byte = std::min<std::size_t>(e.byte, text.size());
            const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(byte > 0 ? byte - 1 : 0), '\n');
            throw ConfigError(src.origin + ":" + std::to_string(line) + ": malformed JSON: " + e.what());
        }
    }
    if (!j.is_object()) throw ConfigError(src.origin + ":1: top level must be an object");
    ExperimentConfig c;
    read_root(Node(j, "", "", src), c);
    try {
        c.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(src.origin + ": " + e.what());
    }
    return c;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

namespace {

std::string q(double v, Dimension d) { return format_si(v) + " " + std::string(info(d).si); }

json range_json(Range r, Dimension d) { return {{"min", q(r.min, d)}, {"max", q(r.max, d)}}; }
json range_json(Range r) { return {{"min", r.min}, {"max", r.max}}; }
json range_json(IntRange r) { return {{"min", r.min}, {"max", r.max}}; }
json point_json(Vec2 p) { return json::array({p.x, p.y}); }
json number_json(double v) { return std::isinf(v) ? json("inf") : json(v); }

}  // namespace

std::string echo_config(const ExperimentConfig& c) {
    const ScenarioConfig& s = c.scenario;
    json j;
    j["clock"] = {{"slot_duration", q(s.clock.slot_duration, Dimension::time)},
                  {"epoch_length", s.clock.epoch_length},
                  {"horizon", s.clock.horizon}};
    j["arena"] = {{"width", q(s.arena.width, Dimension::length)}, {"height", q(s.arena.height, Dimension::length)}};
    j["mds"] = {{"count", s.md_count},
                {"cpu", range_json(s.md_cpu, Dimension::frequency)},
                {"transmit_power", range_json(s.md_transmit_power, Dimension::power)},
                {"energy_cap", q(s.md_energy_cap, Dimension::energy)},
                {"budget", s.md_budget},
                {"weight", s.md_weight},
                {"capacitance", s.md_capacitance},
                {"speed", range_json(s.md_speed, Dimension::speed)},
                {"mobility_memory", s.mobility_memory},
                {"mobility_std", q(s.mobility_std, Dimension::speed)}};
    j["tasks"] = {{"arrival_probability", s.arrival_probability},
                  {"size", range_json(s.task_size, Dimension::data)},
                  {"cycles_per_bit", range_json(s.cycles_per_bit)},
                  {"deadline", range_json(s.deadline, Dimension::time)}};
    j["terrestrial"] = json::array();
    for (const TerrestrialSpec& t : s.terrestrial) {
        j["terrestrial"].push_back({{"position", point_json(t.position)},
                                    {"antenna_height", q(t.antenna_height, Dimension::length)},
                                    {"core_capacity", range_json(t.core_capacity, Dimension::frequency)},
                                    {"cores", range_json(t.cores)},
                                    {"energy_cap", q(t.energy_cap, Dimension::energy)},
                                    {"price_cap", t.price_cap},
                                    {"weight", t.weight},
                                    {"capacitance", t.capacitance}});
    }
    j["aerial"] = json::array();
    for (const AerialSpec& a : s.aerial) {
        j["aerial"].push_back({{"start", point_json(a.start)},
                               {"destination", point_json(a.destination)},
                               {"altitude", q(a.altitude, Dimension::length)},
                               {"max_speed", q(a.max_speed, Dimension::speed)},
                               {"core_capacity", range_json(a.core_capacity, Dimension::frequency)},
                               {"cores", range_json(a.cores)},
                               {"energy_cap", q(a.energy_cap, Dimension::energy)},
                               {"price_cap", a.price_cap},
                               {"weight", a.weight},
                               {"capacitance", a.capacitance},
                               {"propulsion",
                                {{"blade_profile", a.propulsion.blade_profile},
                                 {"induced", a.propulsion.induced},
                                 {"induced_speed4", a.propulsion.induced_speed4},
                                 {"parasite", a.propulsion.parasite},
                                 {"tip_speed", q(a.propulsion.tip_speed, Dimension::speed)}}}});
    }
    const ChannelParams& p = s.channel;
    j["channel"] = {{"bandwidth", q(p.bandwidth, Dimension::bandwidth)},
                    {"noise_density_dbm_hz", p.noise_density_dbm_hz},
                    {"terrestrial_d1", q(p.terrestrial_d1, Dimension::length)},
                    {"terrestrial_d2", q(p.terrestrial_d2, Dimension::length)},
                    {"aerial_a", p.aerial_a},
                    {"aerial_b", p.aerial_b},
                    {"exponent_los", p.exponent_los},
                    {"exponent_nlos", p.exponent_nlos},
                    {"reference_gain_db", p.reference_gain_db},
                    {"nakagami_m_los", p.nakagami_m_los},
                    {"nakagami_m_nlos", p.nakagami_m_nlos},
                    {"shadow_sigma_los_db", p.shadow_sigma_los_db},
                    {"shadow_sigma_nlos_db", p.shadow_sigma_nlos_db},
                    {"mode", p.mode == FadingMode::expected ? "expected" : "sampled"}};
    j["bargaining"] = {{"max_iterations", s.bargain.max_iterations},
                       {"horizon_rounds", s.bargain.horizon_rounds},
                       {"price_sentinel", s.bargain.price_sentinel}};
    j["trajectory"] = {{"tolerance", number_json(s.sca.tolerance)}, {"max_iterations", s.sca.max_iterations}};

    json strategies = json::array();
    for (StrategyKind k : c.strategies) strategies.push_back(std::string(to_string(k)));
    json grid = json::array();
    for (double g : c.sweep.grid) grid.push_back(q(g, Dimension::data));
    j["experiment"] = {{"seeds", c.seeds},
                       {"strategies", strategies},
                       {"sweep", {{"axis", c.sweep.axis}, {"grid", grid}}},
                       {"output_dir", c.output_dir},
                       {"audit", c.audit},
                       {"threads", c.threads}};
    return j.dump(2) + "\n";
}

std::uint64_t config_hash(const ExperimentConfig& c) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : echo_config(c)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace tjcct
