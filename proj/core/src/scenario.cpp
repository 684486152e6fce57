#include "sinr/scenario.hpp"

#include <json.hpp>

#include <unordered_set>

#include "sinr/errors.hpp"

namespace sinr {

using nlohmann::ordered_json;

bool ScenarioData::uniform_power() const {
    for (size_t i = 1; i < transmitters.size(); ++i)
        if (transmitters[i].power.rat != transmitters[0].power.rat) return false;
    return true;
}

int ScenarioData::max_coordinate_places() const {
    int places = 0;
    auto upd = [&](const DecimalValue& v) { places = std::max(places, decimal_places(v.text)); };
    for (const auto& t : transmitters)
        for (const auto& c : t.pos) upd(c);
    for (const auto& r : receivers)
        for (const auto& c : r) upd(c);
    if (grid) {
        for (const auto& c : grid->xs) upd(c);
        for (const auto& c : grid->ys) upd(c);
    }
    return places;
}

namespace {

DecimalValue decimal_field(const ordered_json& j, const char* what) {
    if (j.is_string()) return DecimalValue(j.get<std::string>());
    if (j.is_number_integer()) return DecimalValue(std::to_string(j.get<long long>()));
    if (j.is_number_float()) {
        // tolerated, but the text form is what the exact backend sees
        return DecimalValue(format_quantity(j.get<double>()));
    }
    throw ParseError(std::string("expected decimal string for ") + what);
}

std::vector<DecimalValue> decimal_array(const ordered_json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string("expected array for ") + what);
    std::vector<DecimalValue> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(decimal_field(e, what));
    return out;
}

std::string site_key(const std::vector<const DecimalValue*>& coords) {
    std::string k;
    for (const auto* c : coords) {
        k += c->rat.get_str();
        k += '|';
    }
    return k;
}

}  // namespace

ScenarioData scenario_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("scenario JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("scenario JSON must be an object");

    ScenarioData s;
    try {
        if (!j.contains("alpha") || !j["alpha"].is_number_integer())
            throw ParseError("missing integer field 'alpha'");
        s.alpha = j["alpha"].get<int>();
        if (!j.contains("beta")) throw ParseError("missing field 'beta'");
        s.beta = decimal_field(j["beta"], "beta");
        if (!j.contains("noise")) throw ParseError("missing field 'noise'");
        s.noise = decimal_field(j["noise"], "noise");
        if (!j.contains("dimension") || !j["dimension"].is_number_integer())
            throw ParseError("missing integer field 'dimension'");
        s.dimension = j["dimension"].get<int>();

        if (!j.contains("transmitters") || !j["transmitters"].is_array())
            throw ParseError("missing array field 'transmitters'");
        for (const auto& t : j["transmitters"]) {
            Transmitter tx;
            if (!t.is_object() || !t.contains("pos") || !t.contains("power"))
                throw ParseError("transmitter entries need 'pos' and 'power'");
            tx.pos = decimal_array(t["pos"], "transmitter pos");
            tx.power = decimal_field(t["power"], "transmitter power");
            s.transmitters.push_back(std::move(tx));
        }

        if (!j.contains("receivers")) throw ParseError("missing field 'receivers'");
        const auto& r = j["receivers"];
        if (r.is_array()) {
            for (const auto& e : r) s.receivers.push_back(decimal_array(e, "receiver"));
        } else if (r.is_object() && r.contains("grid")) {
            const auto& g = r["grid"];
            if (!g.is_object() || !g.contains("xs") || !g.contains("ys"))
                throw ParseError("receiver grid needs 'xs' and 'ys'");
            GridSpec grid;
            grid.xs = decimal_array(g["xs"], "grid xs");
            grid.ys = decimal_array(g["ys"], "grid ys");
            s.grid = std::move(grid);
        } else {
            throw ParseError("'receivers' must be an array of points or {\"grid\": ...}");
        }
    } catch (const ordered_json::exception& e) {
        throw ParseError(std::string("scenario JSON: ") + e.what());
    }
    return s;
}

std::string scenario_to_json(const ScenarioData& s) {
    ordered_json j;
    j["alpha"] = s.alpha;
    j["beta"] = s.beta.text;
    j["noise"] = s.noise.text;
    j["dimension"] = s.dimension;
    j["transmitters"] = ordered_json::array();
    for (const auto& t : s.transmitters) {
        ordered_json tx;
        tx["pos"] = ordered_json::array();
        for (const auto& c : t.pos) tx["pos"].push_back(c.text);
        tx["power"] = t.power.text;
        j["transmitters"].push_back(std::move(tx));
    }
    if (s.grid) {
        ordered_json g;
        g["xs"] = ordered_json::array();
        for (const auto& c : s.grid->xs) g["xs"].push_back(c.text);
        g["ys"] = ordered_json::array();
        for (const auto& c : s.grid->ys) g["ys"].push_back(c.text);
        j["receivers"] = ordered_json{{"grid", std::move(g)}};
    } else {
        j["receivers"] = ordered_json::array();
        for (const auto& r : s.receivers) {
            ordered_json pt = ordered_json::array();
            for (const auto& c : r) pt.push_back(c.text);
            j["receivers"].push_back(std::move(pt));
        }
    }
    return j.dump(2) + "\n";
}

void validate_scenario(const ScenarioData& s) {
    if (s.alpha < 2 || s.alpha % 2 != 0)
        throw ValidationError("alpha must be a positive even integer");
    if (!(s.beta.rat > 1)) throw ValidationError("beta must exceed 1");
    if (!(s.noise.rat > 0)) throw ValidationError("noise must be positive");
    if (s.dimension != 1 && s.dimension != 2)
        throw ValidationError("dimension must be 1 or 2");
    if (s.transmitters.empty()) throw ValidationError("at least one transmitter required");
    for (size_t i = 0; i < s.transmitters.size(); ++i) {
        const auto& t = s.transmitters[i];
        if (static_cast<int>(t.pos.size()) != s.dimension)
            throw ValidationError("transmitter " + std::to_string(i) + " has wrong dimension");
        if (!(t.power.rat > 0))
            throw ValidationError("transmitter " + std::to_string(i) + " has non-positive power");
    }
    if (s.grid) {
        if (s.dimension != 2) throw ValidationError("receiver grids require dimension 2");
        if (s.grid->xs.empty() || s.grid->ys.empty())
            throw ValidationError("receiver grid must be non-empty");
    }

    // exact no-receiver-on-transmitter check for explicit lists
    std::unordered_set<std::string> tx_keys;
    for (const auto& t : s.transmitters) {
        std::vector<const DecimalValue*> coords;
        for (const auto& c : t.pos) coords.push_back(&c);
        tx_keys.insert(site_key(coords));
    }
    for (size_t i = 0; i < s.receivers.size(); ++i) {
        const auto& r = s.receivers[i];
        if (static_cast<int>(r.size()) != s.dimension)
            throw ValidationError("receiver " + std::to_string(i) + " has wrong dimension");
        std::vector<const DecimalValue*> coords;
        for (const auto& c : r) coords.push_back(&c);
        if (tx_keys.count(site_key(coords)))
            throw QueryOnTransmitter("receiver " + std::to_string(i) +
                                     " coincides with a transmitter position");
    }
}

}  // namespace sinr
