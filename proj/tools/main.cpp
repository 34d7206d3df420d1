// Command line front end: builds solitons, triads and nodes, runs
// relaxations and waves, and emits field dumps, JSON reports and PPM
// rasters. Exit codes: 0 ok, 2 verification failed, 3 window/budget
// error, 4 bad input.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <algorithm>
#include <iostream>
#include <random>

#include "smoothpile/field_io.hpp"
#include "smoothpile/oracle.hpp"
#include "smoothpile/patterns.hpp"
#include "smoothpile/render.hpp"
#include "smoothpile/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace smoothpile;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 2;
constexpr int kExitWindowOrBudget = 3;
constexpr int kExitBadInput = 4;

struct Output {
    fs::path dir;

    explicit Output(std::string_view flag) {
        if (!flag.empty()) {
            dir = flag;
        } else if (const char* env = std::getenv("SMOOTHPILE_OUT")) {
            dir = env;
        } else {
            dir = ".";
        }
        fs::create_directories(dir);
    }

    std::string path(const std::string& name) const { return (dir / name).string(); }
};

void emit(const std::string& command, const json& config, const json& result) {
    json report;
    report["tool"] = "smoothpile";
    report["version"] = kVersion;
    report["command"] = command;
    report["config"] = config;
    report["result"] = result;
    std::cout << report.dump(2) << '\n';
}

AffineForm parse_form(const std::string& s) {
    AffineForm f;
    if (std::sscanf(s.c_str(), "%ld,%ld,%ld", &f.p, &f.q, &f.c) != 3) {
        throw BadInputError("expected --form p,q,c, got '" + s + "'");
    }
    return f;
}

// JSON list of [p,q,c] triples.
std::vector<AffineForm> load_forms_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw BadInputError("cannot open " + path);
    json doc;
    try {
        is >> doc;
    } catch (const json::exception& e) {
        throw BadInputError("forms file: " + std::string(e.what()));
    }
    if (!doc.is_array()) throw BadInputError("forms file: expected a list of [p,q,c] triples");
    std::vector<AffineForm> forms;
    for (const auto& item : doc) {
        if (!item.is_array() || item.size() != 3) {
            throw BadInputError("forms file: expected [p,q,c] triples");
        }
        forms.push_back(AffineForm{item[0].get<Value>(), item[1].get<Value>(),
                                   item[2].get<Value>()});
    }
    return forms;
}

Point parse_point(const std::string& s) {
    Point p;
    if (std::sscanf(s.c_str(), "%ld,%ld", &p.x, &p.y) != 2) {
        throw BadInputError("expected x,y, got '" + s + "'");
    }
    return p;
}

json point_json(Point p) { return json::array({p.x, p.y}); }

json changes_to_json(const SmoothingResult& res) {
    json sizes = json::array();
    for (const auto& cs : res.change_sets) sizes.push_back(cs.size());
    return sizes;
}

void write_change_csv(const SmoothingResult& res, const Domain& dom, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw BadInputError("cannot open " + path + " for writing");
    os << "step,x,y\n";
    for (size_t k = 0; k < res.change_sets.size(); ++k) {
        for (VertexId v : res.change_sets[k]) {
            const Point pt = dom.coord(v);
            os << (k + 1) << ',' << pt.x << ',' << pt.y << '\n';
        }
    }
}

// ---------------------------------------------------------------- smooth --

int run_smooth(const std::vector<std::string>& form_strs, const std::string& forms_file, int n,
               const std::string& window, const std::string& cyl, int guard, bool strict,
               Value allowance, const Output& out) {
    std::vector<AffineForm> forms;
    if (!forms_file.empty()) forms = load_forms_file(forms_file);
    for (const auto& s : form_strs) forms.push_back(parse_form(s));
    if (forms.empty()) throw BadInputError("smooth: no forms given");
    const PLMinFunction F(forms);

    DomainPtr dom;
    if (!cyl.empty()) {
        Value a, b, y0, y1;
        if (std::sscanf(cyl.c_str(), "%ld,%ld,%ld,%ld", &a, &b, &y0, &y1) != 4) {
            throw BadInputError("expected --cyl a,b,y0,y1");
        }
        dom = Domain::cylinder(a, b, y0, y1, guard);
    } else {
        Value x0, x1, y0, y1;
        if (std::sscanf(window.c_str(), "%ld,%ld,%ld,%ld", &x0, &x1, &y0, &y1) != 4) {
            throw BadInputError("expected --window x0,x1,y0,y1");
        }
        dom = Domain::box(x0, x1, y0, y1, guard);
    }

    SmoothOptions opts;
    opts.strict = strict;
    opts.band_allowance = allowance;
    const SmoothingResult res = smooth_n(F, dom, n, opts);

    save_field(res.final, out.path("smooth_field.txt"));
    save_csv(res.final, out.path("smooth_field.csv"));
    write_change_csv(res, *dom, out.path("smooth_changes.csv"));

    json config{{"n", n}, {"guard", guard}, {"strict", strict}, {"allowance", allowance},
                {"domain", dom->header()}};
    for (const AffineForm& f : F.forms()) config["forms"].push_back(json::array({f.p, f.q, f.c}));
    json result{{"steps", res.steps},
                {"stabilized", res.stabilized},
                {"changed_per_step", changes_to_json(res)},
                {"guard_violation", res.guard_violation.has_value()},
                {"redundant_forms", redundant_forms(F, dom)}};
    emit("smooth", config, result);
    return res.guard_violation && !strict ? kExitWindowOrBudget : kExitOk;
}

// ----------------------------------------------------------------- theta --

int run_theta(Value p, Value q, Value height, int max_iters, const Output& out) {
    SolitonSpec spec{p, q, height, max_iters};
    const PatternState ps = build_soliton(spec);
    save_field(ps.theta, out.path("theta.txt"));
    save_field(laplacian_field(ps.theta), out.path("delta_theta.txt"));

    json config{{"p", p}, {"q", q}, {"height", height}, {"max_iters", max_iters}};
    json result{{"steps", ps.steps},
                {"fold", ps.fold},
                {"domain", ps.theta.domain()->header()},
                {"mass", laplacian_mass_check(ps)}};
    emit("theta", config, result);
    return kExitOk;
}

// --------------------------------------------------------------- builders --

void render_pattern(const PatternState& ps, const std::string& path) {
    const RenderPalette pal = RenderPalette::standard();
    const Domain& dom = *ps.state.domain();
    std::string bytes;
    if (dom.cylinder_params()) {
        // A twisted cylinder only holds a narrow fundamental strip, so
        // rebuild the profile on a plane window for the raster.
        const Value span = std::abs(ps.p) + std::abs(ps.q);
        const Value half = 4 * span + 16;
        const int guard = 4;
        const DomainPtr plane = Domain::box(-half, half, -half, half, guard);
        SmoothOptions opts;
        opts.band_allowance = 2 + 2 * span;  // the band cuts the deviation line
        const PatternState flat = pattern_from(
            PLMinFunction{{AffineForm{0, 0, 0}, AffineForm{-ps.q, ps.p, 0}}}, plane,
            static_cast<int>(40 * span * span) + 64, opts);
        const Value crop = half - guard - opts.band_allowance - 2;
        bytes = render_ppm(flat.state, pal, -crop, crop, -crop, crop);
    } else {
        const auto* bp = dom.box_params();
        bytes = render_ppm(ps.state, pal, bp->x0 + bp->guard, bp->x1 - bp->guard,
                           bp->y0 + bp->guard, bp->y1 - bp->guard);
    }
    save_ppm(bytes, path);
}

int run_soliton(Value p, Value q, Value height, int max_iters, const std::string& render,
                const Output& out) {
    SolitonSpec spec{p, q, height, max_iters};
    const PatternState ps = build_soliton(spec);
    save_field(ps.state.field, out.path("soliton_state.txt"));
    save_field(ps.theta, out.path("soliton_theta.txt"));
    if (!render.empty()) render_pattern(ps, out.path(render));

    json config{{"p", p}, {"q", q}, {"height", height}};
    json result{{"steps", ps.steps}, {"fold", ps.fold},
                {"domain", ps.state.domain()->header()}};
    emit("soliton", config, result);
    return kExitOk;
}

int run_meeting(bool node, Value p1, Value q1, Value p2, Value q2, Value c1, Value c2,
                Value radius, const std::string& render, const Output& out) {
    DirectionPair dirs{p1, q1, p2, q2, c1, c2};
    const PatternState ps = node ? build_node(dirs, radius) : build_triad(dirs, radius);
    const std::string stem = node ? "node" : "triad";
    save_field(ps.state.field, out.path(stem + "_state.txt"));
    save_field(ps.theta, out.path(stem + "_theta.txt"));
    if (!render.empty()) render_pattern(ps, out.path(render));

    json config{{"p1", p1}, {"q1", q1}, {"p2", p2}, {"q2", q2}, {"c1", c1}};
    if (node) config["c2"] = c2;
    json result{{"steps", ps.steps}, {"domain", ps.state.domain()->header()}};
    emit(stem, config, result);
    return kExitOk;
}

// ------------------------------------------------------------ relaxation --

int run_relax(const std::string& input, const std::string& scheduler, std::uint64_t seed,
              std::uint64_t budget, const Output& out) {
    SandpileState phi(load_field(input));
    RelaxOptions opts;
    opts.scheduler = scheduler == "random" ? Scheduler::Random : Scheduler::Fifo;
    opts.seed = seed;
    opts.budget = budget;
    const RelaxationOutcome r = relax(phi, opts);

    save_field(r.final.field, out.path("relaxed_state.txt"));
    save_field(r.odometer, out.path("odometer.txt"));

    json config{{"input", input}, {"scheduler", scheduler}, {"seed", seed}, {"budget", r.budget}};
    json result{{"topplings", r.topplings},
                {"stable", is_stable(r.final)},
                {"exhausted", r.exhausted}};
    emit("relax", config, result);
    return r.exhausted ? kExitWindowOrBudget : kExitOk;
}

int run_wave(const std::string& input, const std::string& source, int count, const Output& out) {
    SandpileState phi(load_field(input));
    const Point src_pt = parse_point(source);
    const VertexId src = phi.domain()->vertex_at(src_pt);
    if (src < 0) throw BadInputError("wave: source outside the window");

    json waves = json::array();
    SandpileState cur = phi;
    for (int k = 0; k < count; ++k) {
        WaveRecord rec = send_wave(cur, src);
        const std::string stem = "wave_" + std::to_string(k + 1);
        save_field(rec.wave_odometer, out.path(stem + "_odometer.txt"));
        save_field(rec.result.field, out.path(stem + "_state.txt"));
        Value toppled = 0;
        for (VertexId v = 0; v < rec.wave_odometer.size(); ++v) toppled += rec.wave_odometer[v];
        waves.push_back(json{{"toppled", toppled}});
        cur = std::move(rec.result);
    }

    json config{{"input", input}, {"source", point_json(src_pt)}, {"count", count}};
    emit("wave", config, json{{"waves", waves}, {"stable", is_stable(cur)}});
    return kExitOk;
}

int run_territories(const std::string& input, const Output&) {
    SandpileState phi(load_field(input));
    const auto comps = territories(phi);
    json sizes = json::array();
    for (const auto& c : comps) sizes.push_back(c.size());
    emit("territories", json{{"input", input}}, json{{"count", comps.size()}, {"sizes", sizes}});
    return kExitOk;
}

// ---------------------------------------------------------- verification --

int run_verify_movable(Value p, Value q, Value height, int waves, const Output&) {
    SolitonSpec spec{p, q, height, 0};
    const PatternState ps = build_soliton(spec);

    json result;
    bool ok;
    if (waves <= 1) {
        const MovabilityReport rep = verify_movable(ps);
        result = {{"shift", point_json(rep.shift)}, {"ok", rep.ok}, {"degenerate", rep.degenerate}};
        ok = rep.ok;
    } else {
        const IteratedWaveReport rep = verify_movable_iterated(ps, waves);
        result = {{"shift", point_json(rep.shift)}, {"ok", rep.ok}, {"waves", rep.waves}};
        ok = rep.ok;
    }
    emit("verify-movable", json{{"p", p}, {"q", q}, {"waves", waves}}, result);
    return ok ? kExitOk : kExitVerificationFailed;
}

int run_mass_check(Value p, Value q, Value height, const Output&) {
    SolitonSpec spec{p, q, height, 0};
    const PatternState ps = build_soliton(spec);
    const Value mass = laplacian_mass_check(ps);
    const Value expected = p * p + q * q;
    const bool ok = mass == expected;
    emit("mass-check", json{{"p", p}, {"q", q}},
         json{{"mass", mass}, {"expected", expected}, {"ok", ok}});
    return ok ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------- oracle --

int run_oracle(const std::string& mode, Value size, std::uint64_t seed, const Output&) {
    std::mt19937_64 rng(seed);
    const DomainPtr dom = Domain::box(0, size - 1, 0, size - 1, 1);
    bool ok = true;
    if (mode == "smooth") {
        std::uniform_int_distribution<Value> coef(-2, 2);
        std::vector<AffineForm> forms;
        while (forms.size() < 3) {
            const AffineForm f{coef(rng), coef(rng), coef(rng)};
            if (std::find(forms.begin(), forms.end(), f) == forms.end()) forms.push_back(f);
        }
        PLMinFunction F(forms);
        const IntegerField g = eval_on(F, dom);
        const SmoothStep fast = smooth_once(g);
        const IntegerField slow =
            oracle::brute_min_superharmonic_step(g, dom->interior_vertices());
        ok = fast.next == slow;
    } else if (mode == "relax") {
        std::uniform_int_distribution<Value> grains(0, 5);
        SandpileState phi(dom, 0);
        for (VertexId v : dom->interior_vertices()) phi[v] = grains(rng);
        const RelaxationOutcome fast = relax(phi);
        const RelaxationOutcome slow = oracle::brute_relax(phi);
        ok = fast.final == slow.final && fast.odometer == slow.odometer;
    } else {
        throw BadInputError("oracle: mode must be smooth or relax");
    }
    emit("oracle", json{{"mode", mode}, {"size", size}, {"seed", seed}}, json{{"ok", ok}});
    return ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical smoothings of lattice functions and sandpile solitons"};
    app.require_subcommand(1);
    app.fallthrough();  // let subcommands use the global --out

    std::string out_flag;
    app.add_option("--out", out_flag, "output directory (default $SMOOTHPILE_OUT or .)");

    // smooth
    auto* smooth = app.add_subcommand("smooth", "apply n smoothing cuts to a min of forms");
    std::vector<std::string> forms;
    std::string forms_file;
    int n = 1, guard = 0;
    std::string window = "-16,16,-16,16", cyl;
    bool no_strict = false;
    Value allowance = -1;
    smooth->add_option("--form", forms, "affine form p,q,c (repeatable)");
    smooth->add_option("--forms-file", forms_file, "JSON list of [p,q,c] triples");
    smooth->add_option("--n", n, "number of cuts");
    smooth->add_option("--window", window, "box window x0,x1,y0,y1");
    smooth->add_option("--cyl", cyl, "cylinder a,b,y0,y1 (overrides --window)");
    auto* guard_opt = smooth->add_option("--guard", guard, "guard band width (default n+8)");
    smooth->add_flag("--no-strict", no_strict, "record guard violations instead of failing");
    smooth->add_option("--allowance", allowance, "band allowance around the deviation set");

    // theta
    auto* theta = app.add_subcommand("theta", "stabilized soliton smoothing and its Laplacian");
    Value tp = 1, tq = 0, theight = 0;
    int titers = 0;
    theta->add_option("--p", tp, "direction x")->required();
    theta->add_option("--q", tq, "direction y")->required();
    theta->add_option("--height", theight, "cylinder rows");
    theta->add_option("--max-iters", titers, "iteration cap");

    // soliton
    auto* sol = app.add_subcommand("soliton", "build a soliton state");
    Value sp = 1, sq = 0, sheight = 0;
    int siters = 0;
    std::string srender;
    sol->add_option("--p", sp, "direction x")->required();
    sol->add_option("--q", sq, "direction y")->required();
    sol->add_option("--height", sheight, "cylinder rows");
    sol->add_option("--max-iters", siters, "iteration cap");
    sol->add_option("--render", srender, "write a PPM raster to this file");

    // triad / node
    Value p1 = 0, q1 = -1, p2 = 1, q2 = -1, c1 = 0, c2 = 0, radius = 0;
    std::string trender, nrender;
    auto* triad = app.add_subcommand("triad", "three solitons meeting at a point");
    triad->add_option("--p1", p1)->required();
    triad->add_option("--q1", q1)->required();
    triad->add_option("--p2", p2)->required();
    triad->add_option("--q2", q2)->required();
    triad->add_option("--c1", c1, "offset of the second slope");
    triad->add_option("--radius", radius, "box half-width");
    triad->add_option("--render", trender, "write a PPM raster to this file");
    auto* node = app.add_subcommand("node", "four solitons meeting along two offsets");
    node->add_option("--p1", p1)->required();
    node->add_option("--q1", q1)->required();
    node->add_option("--p2", p2)->required();
    node->add_option("--q2", q2)->required();
    node->add_option("--c1", c1, "offset of the second slope");
    node->add_option("--c2", c2, "offset of the diagonal slope");
    node->add_option("--radius", radius, "box half-width");
    node->add_option("--render", nrender, "write a PPM raster to this file");

    // relax / wave / territories
    std::string input, scheduler = "fifo", source = "0,0";
    std::uint64_t seed = 0, budget = 0;
    int wave_count = 1;
    auto* relax_cmd = app.add_subcommand("relax", "relax a state loaded from a field dump");
    relax_cmd->add_option("--input", input, "state dump path")->required();
    relax_cmd->add_option("--scheduler", scheduler, "fifo | random");
    relax_cmd->add_option("--seed", seed, "random scheduler seed");
    relax_cmd->add_option("--budget", budget, "toppling budget (0: default)");
    auto* wave_cmd = app.add_subcommand("wave", "send waves from a source vertex");
    wave_cmd->add_option("--input", input, "state dump path")->required();
    wave_cmd->add_option("--source", source, "source vertex x,y")->required();
    wave_cmd->add_option("--count", wave_count, "number of waves");
    auto* terr = app.add_subcommand("territories", "threshold-1 components of a state");
    terr->add_option("--input", input, "state dump path")->required();

    // verify-movable / mass-check
    auto* vm = app.add_subcommand("verify-movable", "wave a soliton and detect its shift");
    Value vp = 1, vq = 0, vheight = 0;
    int vwaves = 1;
    vm->add_option("--p", vp)->required();
    vm->add_option("--q", vq)->required();
    vm->add_option("--height", vheight, "cylinder rows");
    vm->add_option("--waves", vwaves, "iterate this many waves");
    auto* mass = app.add_subcommand("mass-check", "compare soliton Laplacian mass to p^2+q^2");
    Value mp = 1, mq = 0, mheight = 0;
    mass->add_option("--p", mp)->required();
    mass->add_option("--q", mq)->required();
    mass->add_option("--height", mheight, "cylinder rows");

    // oracle (debugging)
    auto* orc = app.add_subcommand("oracle", "cross-check against brute-force references");
    orc->group("");  // debugging helper, hidden from --help
    std::string omode = "smooth";
    Value osize = 6;
    std::uint64_t oseed = 1;
    orc->add_option("--mode", omode, "smooth | relax");
    orc->add_option("--size", osize, "window side");
    orc->add_option("--seed", oseed, "instance seed");

    CLI11_PARSE(app, argc, argv);

    try {
        const Output out(out_flag);
        if (smooth->parsed()) {
            if (guard_opt->count() == 0) guard = n + 8;
            return run_smooth(forms, forms_file, n, window, cyl, guard, !no_strict, allowance,
                              out);
        }
        if (theta->parsed()) return run_theta(tp, tq, theight, titers, out);
        if (sol->parsed()) return run_soliton(sp, sq, sheight, siters, srender, out);
        if (triad->parsed()) return run_meeting(false, p1, q1, p2, q2, c1, c2, radius, trender, out);
        if (node->parsed()) return run_meeting(true, p1, q1, p2, q2, c1, c2, radius, nrender, out);
        if (relax_cmd->parsed()) return run_relax(input, scheduler, seed, budget, out);
        if (wave_cmd->parsed()) return run_wave(input, source, wave_count, out);
        if (terr->parsed()) return run_territories(input, out);
        if (vm->parsed()) return run_verify_movable(vp, vq, vheight, vwaves, out);
        if (mass->parsed()) return run_mass_check(mp, mq, mheight, out);
        if (orc->parsed()) return run_oracle(omode, osize, oseed, out);
        return kExitBadInput;
    } catch (const WindowTooSmallError& e) {
        std::cout << json{{"error", e.what()}, {"kind", "window"}}.dump(2) << '\n';
        return kExitWindowOrBudget;
    } catch (const IterationCapError& e) {
        std::cout << json{{"error", e.what()}, {"kind", "budget"}}.dump(2) << '\n';
        return kExitWindowOrBudget;
    } catch (const TooLargeError& e) {
        std::cout << json{{"error", e.what()}, {"kind", "budget"}}.dump(2) << '\n';
        return kExitWindowOrBudget;
    } catch (const Error& e) {
        std::cout << json{{"error", e.what()}, {"kind", "input"}}.dump(2) << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cout << json{{"error", e.what()}, {"kind", "internal"}}.dump(2) << '\n';
        return kExitBadInput;
    }
}
