// Command-line front end: rewriting, curve drawing, tiling rendering,
// hinge animation, sim-value reports and box-counting estimates.
//
// Exit codes: 0 success, 2 usage error, 3 domain error, 4 check failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "truchet/boundary.hpp"
#include "truchet/boxdim.hpp"
#include "truchet/core.hpp"
#include "truchet/geometry.hpp"
#include "truchet/io.hpp"
#include "truchet/svg.hpp"
#include "truchet/tiling.hpp"

namespace {

constexpr const char* kVersion = "truchet 1.0.0";

struct StyleOptions {
    std::string design = "arcs";
    std::string corner = "rounded";
    double stroke_width = 0.12;
    std::string palette;
    std::string background = "#ffffff";
};

truchet::RenderStyle build_style(const StyleOptions& o) {
    truchet::RenderStyle s;
    if (o.design == "arcs") s.design = truchet::TileDesign::QuarterArcs;
    else if (o.design == "diagonals") s.design = truchet::TileDesign::Diagonals;
    else if (o.design == "middeform") s.design = truchet::TileDesign::MidDeform;
    else throw truchet::parse_error("unknown design '" + o.design + "'");
    if (o.corner == "rounded") s.corner = truchet::CornerStyle::Rounded;
    else if (o.corner == "sharp") s.corner = truchet::CornerStyle::Sharp;
    else throw truchet::parse_error("unknown corner style '" + o.corner + "'");
    if (o.stroke_width <= 0) throw truchet::parse_error("stroke width must be positive");
    s.stroke_width = o.stroke_width;
    s.background = o.background;
    if (!o.palette.empty()) {
        s.palette.clear();
        std::stringstream ss(o.palette);
        std::string color;
        while (std::getline(ss, color, ',')) {
            if (!color.empty()) s.palette.push_back(color);
        }
        if (s.palette.empty()) throw truchet::parse_error("palette must name at least one color");
    }
    return s;
}

// Plain key=value lines; '#' starts a comment. Flags override file values.
void load_config(const std::string& path, StyleOptions& style) {
    std::ifstream in(path);
    if (!in) throw truchet::parse_error("cannot read config file " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw truchet::parse_error("config line without '=': " + line);
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "design") style.design = value;
        else if (key == "corner") style.corner = value;
        else if (key == "stroke_width") style.stroke_width = std::stod(value);
        else if (key == "palette") style.palette = value;
        else if (key == "background") style.background = value;
        else throw truchet::parse_error("unknown config key '" + key + "'");
    }
}

// Splits the evolved script into one open path per seed crossing; each seed
// segment's descendants form a contiguous block of 2^n edges.
std::vector<truchet::PlanarPath> script_components(const truchet::Script& sc) {
    using namespace truchet;
    const Word evolved = apply_ops(sc.seed, sc.ops);
    const LatticePath path = interpret(evolved);
    const std::size_t seed_crossings = static_cast<std::size_t>(sc.seed.crossings());
    const std::size_t block = path.edge_count() / std::max<std::size_t>(seed_crossings, 1);
    std::vector<PlanarPath> parts;
    for (std::size_t i = 0; i < seed_crossings; ++i) {
        PlanarPath pp;
        for (std::size_t k = i * block; k <= (i + 1) * block; ++k)
            pp.points.emplace_back(static_cast<double>(path.points[k].x),
                                   static_cast<double>(path.points[k].y));
        parts.push_back(std::move(pp));
    }
    return parts;
}

int run(int argc, char** argv) {
    using namespace truchet;
    CLI::App app{"hinged Truchet tiling curves, sim values and renders"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    StyleOptions style_opts;
    std::string config_path;
    app.add_option("--config", config_path, "key=value config file with style defaults");

    struct StyleFlagRefs {
        CLI::Option* design = nullptr;
        CLI::Option* corner = nullptr;
        CLI::Option* stroke = nullptr;
        CLI::Option* palette = nullptr;
        CLI::Option* background = nullptr;
    };
    std::vector<std::pair<CLI::App*, StyleFlagRefs>> style_refs;
    auto add_style_flags = [&](CLI::App* cmd) {
        StyleFlagRefs r;
        r.design = cmd->add_option("--design", style_opts.design, "tile design: arcs|diagonals|middeform");
        r.corner = cmd->add_option("--corner", style_opts.corner, "corner style: rounded|sharp");
        r.stroke = cmd->add_option("--stroke-width", style_opts.stroke_width, "stroke width");
        r.palette = cmd->add_option("--palette", style_opts.palette, "comma separated colors");
        r.background = cmd->add_option("--background", style_opts.background, "background color");
        style_refs.emplace_back(cmd, r);
    };

    // rewrite
    std::string script_text;
    auto* rewrite = app.add_subcommand("rewrite", "apply the operations of a script and print the word");
    rewrite->add_option("--script", script_text, "script like 0100010RRRR")->required();

    // draw
    std::string draw_script, draw_svg;
    bool draw_check = false;
    auto* draw = app.add_subcommand("draw", "render the curve of a script as SVG");
    draw->add_option("--script", draw_script, "script like 0100010RRRR")->required();
    draw->add_option("--svg", draw_svg, "output SVG path");
    draw->add_flag("--check", draw_check, "verify non-crossing and the containment bound");
    add_style_flags(draw);

    // tiling
    int til_w = 4, til_h = 4, til_op = 0;
    std::uint64_t til_seed = 1;
    bool til_torus = false;
    double til_theta = 0.0;
    std::string til_svg;
    auto* tiling = app.add_subcommand("tiling", "render a random Truchet tiling at a hinge angle");
    tiling->add_option("--w", til_w, "grid width")->required();
    tiling->add_option("--h", til_h, "grid height")->required();
    tiling->add_option("--seed", til_seed, "orientation seed")->required();
    tiling->add_flag("--torus", til_torus, "toroidal grid");
    tiling->add_option("--theta", til_theta, "hinge angle in degrees, 0..45");
    tiling->add_option("--op", til_op, "hinge operation 0 or 1");
    tiling->add_option("--svg", til_svg, "output SVG path")->required();
    add_style_flags(tiling);

    // animate
    int ani_frames = 8, ani_op = 0, ani_w = 4, ani_h = 4;
    std::uint64_t ani_seed = 1;
    bool ani_torus = false;
    std::string ani_outdir;
    auto* animate = app.add_subcommand("animate", "write an SVG frame sequence of one hinge step");
    animate->add_option("--frames", ani_frames, "frame count >= 2")->required();
    animate->add_option("--op", ani_op, "hinge operation 0 or 1")->required();
    animate->add_option("--outdir", ani_outdir, "output directory")->required();
    animate->add_option("--w", ani_w, "grid width");
    animate->add_option("--h", ani_h, "grid height");
    animate->add_option("--seed", ani_seed, "orientation seed");
    animate->add_flag("--torus", ani_torus, "toroidal grid");
    add_style_flags(animate);

    // simvalue
    std::string sim_ops, sim_json;
    auto* simvalue = app.add_subcommand("simvalue", "sim value of the boundary of B^inf");
    simvalue->add_option("--ops", sim_ops, "operation string over {0,1}")->required();
    simvalue->add_option("--json", sim_json, "output JSON path");

    // boxdim
    std::string box_ops, box_json;
    int box_depth = 12;
    auto* boxdim = app.add_subcommand("boxdim", "box-counting dimension estimate of the fractile boundary");
    boxdim->add_option("--ops", box_ops, "operation pattern over {0,1}")->required();
    boxdim->add_option("--depth", box_depth, "iteration depth >= 6")->required();
    boxdim->add_option("--json", box_json, "output JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (!config_path.empty()) {
        // the config supplies defaults; values given on the command line win
        StyleOptions from_file;
        load_config(config_path, from_file);
        for (const auto& [cmd, refs] : style_refs) {
            if (!cmd->parsed()) continue;
            if (refs.design->count() == 0) style_opts.design = from_file.design;
            if (refs.corner->count() == 0) style_opts.corner = from_file.corner;
            if (refs.stroke->count() == 0) style_opts.stroke_width = from_file.stroke_width;
            if (refs.palette->count() == 0) style_opts.palette = from_file.palette;
            if (refs.background->count() == 0) style_opts.background = from_file.background;
        }
    }

    if (rewrite->parsed()) {
        const Script sc = parse_script(script_text);
        std::cout << apply_ops(sc.seed, sc.ops).str() << "\n";
        return 0;
    }

    if (draw->parsed()) {
        const Script sc = parse_script(draw_script);
        const RenderStyle style = build_style(style_opts);
        const auto parts = script_components(sc);
        if (!draw_svg.empty()) write_file_atomic(draw_svg, svg_curve(parts, style));
        const Word evolved = apply_ops(sc.seed, sc.ops);
        const LatticePath path = interpret(evolved);
        std::cout << "edges " << path.edge_count() << " components " << parts.size() << "\n";
        if (draw_check) {
            bool ok = is_non_crossing(path);
            double ratio = 0.0;
            const double bound = 2.0 - std::sqrt(2.0) + 1e-9;
            if (!sc.ops.empty()) {
                ratio = containment_ratio(sc.ops, static_cast<int>(sc.ops.size()));
                if (ratio > bound) ok = false;
            }
            std::cout << "non_crossing " << (is_non_crossing(path) ? "yes" : "no")
                      << " containment_ratio " << ratio << "\n";
            if (!ok) {
                std::cerr << "check failed\n";
                return 4;
            }
        }
        return 0;
    }

    if (tiling->parsed()) {
        const TilingGrid g = random_grid(til_w, til_h, til_seed, til_torus);
        const RenderStyle style = build_style(style_opts);
        write_file_atomic(til_svg, svg_tiling(g, til_op, til_theta, style));
        return 0;
    }

    if (animate->parsed()) {
        const TilingGrid g = random_grid(ani_w, ani_h, ani_seed, ani_torus);
        const RenderStyle style = build_style(style_opts);
        const auto frames = animation_frames(g, ani_op, ani_frames, style);
        for (std::size_t k = 0; k < frames.size(); ++k) {
            char name[32];
            std::snprintf(name, sizeof(name), "frame_%03zu.svg", k);
            write_file_atomic(ani_outdir + "/" + name, frames[k]);
        }
        std::cout << "wrote " << frames.size() << " frames to " << ani_outdir << "\n";
        return 0;
    }

    if (simvalue->parsed()) {
        const OpSequence ops = OpSequence::parse(sim_ops);
        const SimValueReport rep = sim_value(ops);
        const auto j = to_json(rep);
        if (!sim_json.empty()) write_file_atomic(sim_json, j.dump(2) + "\n");
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    if (boxdim->parsed()) {
        const OpSequence ops = OpSequence::parse(box_ops);
        const CellSet cells = fractile_boundary_cells(ops, box_depth);
        const BoxDimEstimate est = box_dimension(cells);
        const auto j = to_json(est, ops, box_depth);
        if (!box_json.empty()) write_file_atomic(box_json, j.dump(2) + "\n");
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const truchet::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const truchet::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
