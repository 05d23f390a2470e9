#pragma once

// JSON serialization of reports and grids, and atomic file writes.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "truchet/boundary.hpp"
#include "truchet/boxdim.hpp"
#include "truchet/tiling.hpp"

namespace truchet {

// Reals are serialized with 15 significant digits.
inline nlohmann::json json_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return nlohmann::json(std::stod(buf));
}

inline nlohmann::json to_json(const SimValueReport& rep) {
    nlohmann::json j;
    j["B"] = rep.ops.str();
    j["M"] = nlohmann::json::array();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) j["M"].push_back(rep.matrix.m[r][c]);
    j["charpoly"] = {{"a", rep.poly.a}, {"b", rep.poly.b}, {"c", rep.poly.c}};
    j["applicable"] = rep.applicable;
    j["lambda"] = rep.applicable ? json_real(rep.lambda) : nlohmann::json(nullptr);
    j["sim_value"] = rep.applicable ? json_real(rep.sim_value) : nlohmann::json(nullptr);
    j["n"] = rep.matrix.n;
    if (!rep.diagnostic.empty()) j["diagnostic"] = rep.diagnostic;
    return j;
}

inline nlohmann::json to_json(const BoxDimEstimate& est, const OpSequence& ops, int depth) {
    nlohmann::json j;
    j["B"] = ops.str();
    j["depth"] = depth;
    j["slope"] = json_real(est.slope);
    j["r2"] = json_real(est.r2);
    j["sizes"] = est.sizes;
    j["counts"] = est.counts;
    return j;
}

inline nlohmann::json to_json(const TilingGrid& g) {
    nlohmann::json j;
    j["width"] = g.width;
    j["height"] = g.height;
    j["torus"] = g.torus;
    j["parity_origin"] = g.parity_origin;
    if (g.wrap_shift != 0) j["wrap_shift"] = g.wrap_shift;
    nlohmann::json arr = nlohmann::json::array();
    for (auto o : g.orient) {
        if (o < 0) arr.push_back(nullptr);
        else arr.push_back(static_cast<int>(o));
    }
    j["orientations"] = arr;
    return j;
}

inline TilingGrid grid_from_json(const nlohmann::json& j) {
    TilingGrid g;
    g.width = j.at("width").get<int>();
    g.height = j.at("height").get<int>();
    g.torus = j.at("torus").get<bool>();
    g.parity_origin = j.at("parity_origin").get<int>();
    g.wrap_shift = j.value("wrap_shift", 0);
    const auto& arr = j.at("orientations");
    if (static_cast<int>(arr.size()) != g.width * g.height)
        throw parse_error("orientations array size does not match grid dimensions");
    g.orient.reserve(arr.size());
    for (const auto& v : arr) {
        if (v.is_null()) { g.orient.push_back(-1); continue; }
        const int o = v.get<int>();
        if (o != 0 && o != 90) throw parse_error("orientation values must be 0 or 90");
        g.orient.push_back(static_cast<std::int16_t>(o));
    }
    return g;
}

// Writes via a temporary file in the same directory, then renames.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

} // namespace truchet
