// fourdlo: validate the math, export geometry, render frame files, serve the viewer.
//
// Exit status: 0 success, 1 validation or parse failure, 2 I/O or environment failure.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fourdlo/fourdlo.hpp"
#include "serve.hpp"

using namespace fourdlo;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIoError = 2;

struct Failure {
    int code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kIoError, "cannot read '" + path + "'"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// "x,y,z,w" with optional spaces.
Quat4 parse_quat(const std::string& text) {
    double v[4];
    std::size_t pos = 0;
    for (int k = 0; k < 4; ++k) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        const char* first = text.data() + pos;
        const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), v[k]);
        if (ec != std::errc() || !std::isfinite(v[k])) throw Failure{kInvalid, "bad quaternion '" + text + "'; expected x,y,z,w"};
        pos = static_cast<std::size_t>(ptr - text.data());
        while (pos < text.size() && text[pos] == ' ') ++pos;
        if (k < 3) {
            if (pos >= text.size() || text[pos] != ',') throw Failure{kInvalid, "bad quaternion '" + text + "'; expected x,y,z,w"};
            ++pos;
        }
    }
    if (pos != text.size()) throw Failure{kInvalid, "bad quaternion '" + text + "'; expected x,y,z,w"};
    const Quat4 q{v[0], v[1], v[2], v[3]};
    if (norm(q) < 1e-12) throw Failure{kInvalid, "pose quaternion '" + text + "' is zero"};
    return q;
}

script::Program load_program(const std::string& path) {
    const auto result = script::parse(read_file(path));
    if (!result.ok()) {
        for (const auto& d : result.diagnostics) std::cerr << path << ":" << d.to_string() << "\n";
        throw Failure{kInvalid, "'" + path + "' has errors"};
    }
    return *result.program;
}

script::Signal load_signal(const std::optional<std::string>& path) {
    if (!path) return script::Signal::constant(1.0);
    if (!std::filesystem::exists(*path)) {
        std::cerr << "note: signal file '" << *path << "' not found; using constant 1.0\n";
        return script::Signal::constant(1.0);
    }
    std::ifstream in(*path);
    if (!in) throw Failure{kIoError, "cannot read '" + *path + "'"};
    try {
        return script::read_signal_csv(in);
    } catch (const std::invalid_argument& e) {
        throw Failure{kInvalid, *path + ": " + e.what()};
    }
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{kIoError, "cannot write '" + path + "'"};
    return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw Failure{kIoError, "write to '" + path + "' failed"};
}

int cmd_validate(bool corrupt) {
    GroupCatalog catalog;
    const ValidationReport report = run_validation(catalog, {corrupt});
    std::cout << report.table();
    return report.ok() ? kOk : kInvalid;
}

int cmd_export(const std::string& left, const std::string& right, const std::string& out_path) {
    const ViewPose pose = ViewPose::normalized(parse_quat(left), parse_quat(right));
    GroupCatalog catalog;
    const Fixture fixture = build_fixture(catalog.cell24(), {}, pose);
    const io::GeometryExport g = io::build_export(catalog, fixture);
    std::ofstream out = open_output(out_path);
    out << io::dump_geometry(g);
    finish_output(out, out_path);
    std::cout << "wrote " << out_path << ": " << g.vertices.size() << " vertices, " << g.edges.size() << " edges, "
              << g.rings.size() << " rings, " << g.fixture.strands.size() << " strands\n";
    return kOk;
}

int cmd_render(const std::string& script_path, const std::optional<std::string>& signal_path, double fps,
               const std::string& out_path) {
    GroupCatalog catalog;
    script::Program program = load_program(script_path);
    const script::Signal signal = load_signal(signal_path);
    const Fixture fixture = build_fixture(catalog.cell24());
    const script::Sequencer seq(std::move(program), fixture, catalog.cell24(), catalog);

    const io::FrameHeader header{io::kFrameFileVersion, static_cast<std::uint32_t>(fixture.size()),
                                 static_cast<std::uint32_t>(seq.frame_count(fps)), static_cast<float>(fps)};
    std::ofstream out = open_output(out_path);
    io::FrameWriter writer(out, header);
    seq.render_parallel(fps, signal, [&](const script::Frame& f) { writer.write(f); });
    finish_output(out, out_path);
    std::cout << "wrote " << out_path << ": " << header.frame_count << " frames x " << header.led_count << " LEDs at "
              << fps << " fps\n";
    return kOk;
}

int cmd_serve(const std::string& script_path, const std::optional<std::string>& signal_path, double fps,
              const std::string& host, unsigned short port, const std::string& assets) {
    GroupCatalog catalog;
    script::Program program = load_program(script_path);
    const script::Signal signal = load_signal(signal_path);
    const Fixture fixture = build_fixture(catalog.cell24());
    const script::Sequencer seq(std::move(program), fixture, catalog.cell24(), catalog);
    if (!assets.empty() && !std::filesystem::is_directory(assets)) throw Failure{kIoError, "no assets directory '" + assets + "'"};

    serve::Context ctx;
    ctx.sequencer = &seq;
    ctx.signal = &signal;
    ctx.fps = fps;
    ctx.geometry = io::dump_geometry(io::build_export(catalog, fixture));
    ctx.assets = assets;
    try {
        serve::run(ctx, host, port, [&](unsigned short bound) {
            std::cout << "listening on http://" << host << ":" << bound << std::endl;
        });
    } catch (const boost::system::system_error& e) {
        throw Failure{kIoError, "cannot serve on " + host + ":" + std::to_string(port) + ": " + e.code().message()};
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"24-cell geometry, symmetry and LED sequencing"};
    app.require_subcommand(1);

    bool corrupt = false;
    auto* validate = app.add_subcommand("validate", "Run the incidence, group, ring, compound, fiber and arc checks");
    validate->add_flag("--corrupt-vertex", corrupt, "Swap in a wrong vertex (negative control)")->group("");

    std::string left = "0,0,0,1", right = "0,0,0,1", export_out;
    auto* exp = app.add_subcommand("export", "Write the geometry JSON for a view pose");
    exp->add_option("--pose-left,--left", left, "Left pose quaternion x,y,z,w");
    exp->add_option("--pose-right,--right", right, "Right pose quaternion x,y,z,w");
    exp->add_option("OUT", export_out, "Output JSON path")->required();

    std::string render_script, render_out;
    std::optional<std::string> render_signal;
    double render_fps = 30;
    auto* render = app.add_subcommand("render", "Render a script to a frame file");
    render->add_option("SCRIPT", render_script, "Script path")->required();
    render->add_option("OUT", render_out, "Output frame file")->required();
    render->add_option("--signal", render_signal, "Signal CSV (time,amplitude)");
    render->add_option("--fps", render_fps, "Frames per second")->check(CLI::PositiveNumber);

    std::string serve_script, host = "127.0.0.1", assets;
    std::optional<std::string> serve_signal;
    double serve_fps = 30;
    unsigned short port = 8080;
    auto* srv = app.add_subcommand("serve", "Serve geometry and live frames for the viewer");
    srv->add_option("SCRIPT", serve_script, "Script path")->required();
    srv->add_option("--port", port, "TCP port (0 picks a free one)");
    srv->add_option("--host", host, "Address to bind");
    srv->add_option("--signal", serve_signal, "Signal CSV used until a client sends a signal value");
    srv->add_option("--fps", serve_fps, "Frames per second")->check(CLI::PositiveNumber);
    srv->add_option("--assets", assets, "Directory of static viewer files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*validate) return cmd_validate(corrupt);
        if (*exp) return cmd_export(left, right, export_out);
        if (*render) return cmd_render(render_script, render_signal, render_fps, render_out);
        if (*srv) return cmd_serve(serve_script, serve_signal, serve_fps, host, port, assets);
    } catch (const Failure& f) {
        std::cerr << "fourdlo: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "fourdlo: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
