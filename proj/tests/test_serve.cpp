#include <gtest/gtest.h>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <fstream>

#include "fourdlo/io/geometry.hpp"
#include "fourdlo/io/live.hpp"
#include "process.hpp"

using namespace fourdlo;
namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

const std::string kDemo = std::string(FOURDLO_SOURCE_DIR) + "/data/demo.4dlo";
constexpr std::size_t kLeds = 14016;

GroupCatalog& catalog() {
    static GroupCatalog c;
    return c;
}

http::response<http::string_body> http_request(int port, http::verb verb, const std::string& target) {
    asio::io_context ioc;
    beast::tcp_stream stream(ioc);
    stream.connect(tcp::endpoint(asio::ip::make_address("127.0.0.1"), static_cast<unsigned short>(port)));
    http::request<http::string_body> req{verb, target, 11};
    req.set(http::field::host, "127.0.0.1");
    http::write(stream, req);
    beast::flat_buffer buf;
    http::response<http::string_body> res;
    http::read(stream, buf, res);
    return res;
}

/// Blocking WebSocket client for /frames.
class FrameClient {
public:
    explicit FrameClient(int port) : ws_(ioc_) {
        ws_.next_layer().connect(tcp::endpoint(asio::ip::make_address("127.0.0.1"), static_cast<unsigned short>(port)));
        ws_.handshake("127.0.0.1", "/frames");
    }
    ~FrameClient() {
        beast::error_code ec;
        ws_.close(websocket::close_code::normal, ec);
    }

    struct Message {
        bool text;
        std::string data;
    };

    Message read() {
        beast::flat_buffer buf;
        ws_.read(buf);
        return {ws_.got_text(), beast::buffers_to_string(buf.data())};
    }

    /// Next binary frame, skipping text messages.
    std::string frame() {
        for (;;) {
            auto m = read();
            if (!m.text) return m.data;
        }
    }

    nlohmann::json text() {
        for (;;) {
            auto m = read();
            if (m.text) return nlohmann::json::parse(m.data);
        }
    }

    void send(const std::string& text) {
        ws_.text(true);
        ws_.write(asio::buffer(text));
    }

private:
    asio::io_context ioc_;
    websocket::stream<tcp::socket> ws_;
};

std::uint32_t frame_index(const std::string& payload) {
    std::uint32_t v = 0;
    for (int k = 3; k >= 0; --k) v = v << 8 | static_cast<unsigned char>(payload[static_cast<std::size_t>(k)]);
    return v;
}

bool black(const std::string& payload) {
    return std::all_of(payload.begin() + 4, payload.end(), [](char c) { return c == 0; });
}

std::size_t lit_leds(const std::string& payload) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < kLeds; ++i)
        n += payload[4 + 3 * i] != 0 || payload[5 + 3 * i] != 0 || payload[6 + 3 * i] != 0;
    return n;
}

class Serve : public ::testing::Test {
protected:
    static void SetUpTestSuite() { server_ = new testing_process::Server({kDemo}); }
    static void TearDownTestSuite() {
        delete server_;
        server_ = nullptr;
    }
    static int port() { return server_->port(); }
    static testing_process::Server* server_;
};

testing_process::Server* Serve::server_ = nullptr;

}  // namespace

TEST_F(Serve, GeometryIsTheExportPayload) {
    const auto res = http_request(port(), http::verb::get, "/geometry.json");
    EXPECT_EQ(res.result(), http::status::ok);
    EXPECT_EQ(res[http::field::content_type], "application/json");
    const Fixture f = build_fixture(catalog().cell24());
    EXPECT_EQ(res.body(), io::dump_geometry(io::build_export(catalog(), f)));
}

TEST_F(Serve, HttpErrors) {
    EXPECT_EQ(http_request(port(), http::verb::get, "/").result(), http::status::ok);
    EXPECT_EQ(http_request(port(), http::verb::get, "/missing.js").result(), http::status::not_found);
    EXPECT_EQ(http_request(port(), http::verb::post, "/geometry.json").result(), http::status::method_not_allowed);
}

TEST_F(Serve, HelloThenIndexedFrames) {
    FrameClient c(port());
    const auto hello = c.text();
    EXPECT_EQ(hello.at("type"), "hello");
    EXPECT_EQ(hello.at("led_count"), kLeds);
    EXPECT_EQ(hello.at("fps"), 30.0);
    EXPECT_EQ(hello.at("duration"), 46.0);
    ASSERT_EQ(hello.at("scenes").size(), 3u);
    EXPECT_EQ(hello.at("scenes")[1].at("name"), "cells");
    EXPECT_EQ(hello.at("scenes")[1].at("start"), 10.0);

    std::uint32_t last = 0;
    for (int k = 0; k < 10; ++k) {
        const std::string f = c.frame();
        ASSERT_EQ(f.size(), 4 + 3 * kLeds);
        if (k > 0) {
            EXPECT_GT(frame_index(f), last);
        }
        last = frame_index(f);
    }
}

TEST_F(Serve, AmplitudeZeroDarkens) {
    FrameClient c(port());
    EXPECT_FALSE(black(c.frame()));
    c.send(R"({"type":"signal","value":0})");
    int waited = 0;
    while (!black(c.frame())) ASSERT_LT(++waited, 30);
    for (int k = 0; k < 10; ++k) EXPECT_TRUE(black(c.frame()));
    c.send(R"({"type":"signal","value":1})");
    waited = 0;
    while (black(c.frame())) ASSERT_LT(++waited, 30);
}

TEST_F(Serve, SceneSelectStartsCellSweep) {
    FrameClient c(port());
    c.frame();
    c.send(R"({"type":"scene","index":1})");
    // The first sweep step lights one octahedral cell: 12 edges of 146 LEDs.
    int waited = 0;
    while (lit_leds(c.frame()) != 12 * 146) ASSERT_LT(++waited, 30);
}

TEST_F(Serve, PoseSendsProjectedArcs) {
    FrameClient c(port());
    c.frame();
    c.send(R"({"type":"pose","left":[0.5,0.5,0.5,0.5],"right":[0,0,0,1]})");
    nlohmann::json msg;
    do msg = c.text();
    while (msg.at("type") != "arcs");
    const ViewPose pose = ViewPose::normalized({0.5, 0.5, 0.5, 0.5}, Quat4::identity());
    const auto arcs = msg.at("arcs").get<std::vector<io::GeometryExport::Arc>>();
    EXPECT_EQ(arcs, io::project_arcs(catalog().cell24(), pose));
    EXPECT_NE(arcs, io::project_arcs(catalog().cell24(), ViewPose{}));
    EXPECT_EQ(c.frame().size(), 4 + 3 * kLeds);
}

TEST_F(Serve, MalformedMessagesAreIgnored) {
    FrameClient c(port());
    c.frame();
    c.send("not json");
    c.send(R"({"type":"scene","index":99})");
    c.send(R"({"type":"pose","left":[0,0,0,0],"right":[0,0,0,1]})");
    for (int k = 0; k < 5; ++k) EXPECT_EQ(c.frame().size(), 4 + 3 * kLeds);
    const std::string err = server_->stderr_text();
    EXPECT_NE(err.find("ignored message: not JSON"), std::string::npos) << err;
    EXPECT_NE(err.find("out of range"), std::string::npos) << err;
}

TEST(ServeProcess, StaticAssetsAndShutdown) {
    testing_process::TempDir tmp;
    std::filesystem::create_directory(tmp.path / "assets");
    std::ofstream(tmp / "assets/index.html") << "<title>viewer</title>";
    std::ofstream(tmp / "secret.txt") << "secret";
    testing_process::Server server({kDemo, "--assets", tmp / "assets", "--fps", "10"});
    const auto index = http_request(server.port(), http::verb::get, "/");
    EXPECT_EQ(index.body(), "<title>viewer</title>");
    EXPECT_EQ(index[http::field::content_type], "text/html");
    EXPECT_EQ(http_request(server.port(), http::verb::get, "/../secret.txt").result(), http::status::forbidden);
    {
        FrameClient c(server.port());
        EXPECT_EQ(c.text().at("fps"), 10.0);
    }
    EXPECT_EQ(server.stop(), 0);
}

TEST(ServeProcess, PortInUseIsAnEnvironmentFailure) {
    testing_process::Server first({kDemo});
    const auto r = testing_process::run({"serve", "--port", std::to_string(first.port()), kDemo});
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("cannot serve"), std::string::npos) << r.err;
}
