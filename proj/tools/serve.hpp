#pragma once

// HTTP + WebSocket server for the viewer. Everything runs on one io_context
// thread: each WebSocket session ticks at the frame rate and client messages
// are handled between ticks.

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <chrono>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "fourdlo/io/live.hpp"

namespace fourdlo::serve {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

struct Context {
    const script::Sequencer* sequencer = nullptr;
    const script::Signal* signal = nullptr;
    double fps = 30;
    std::string geometry;          ///< body of /geometry.json
    std::filesystem::path assets;  ///< static files; empty for none
};

/// Frames allowed to wait behind a slow client before ticks start dropping them.
inline constexpr std::size_t kMaxQueued = 4;

inline std::string_view mime_type(const std::filesystem::path& p) {
    const std::string ext = p.extension().string();
    if (ext == ".html") return "text/html";
    if (ext == ".js" || ext == ".mjs") return "text/javascript";
    if (ext == ".css") return "text/css";
    if (ext == ".json") return "application/json";
    if (ext == ".svg") return "image/svg+xml";
    if (ext == ".png") return "image/png";
    if (ext == ".wasm") return "application/wasm";
    return "application/octet-stream";
}

inline void log(const std::string& line) { std::cerr << "serve: " << line << std::endl; }

class FrameSession : public std::enable_shared_from_this<FrameSession> {
public:
    FrameSession(tcp::socket&& socket, const Context& ctx)
        : ws_(std::move(socket)), ctx_(ctx), timer_(ws_.get_executor()), playback_(*ctx.sequencer, *ctx.signal, ctx.fps) {}

    void start(http::request<http::string_body> req) {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
            if (ec) return log("websocket accept: " + ec.message());
            self->on_open();
        });
    }

private:
    struct Outgoing {
        std::string data;
        bool binary;
    };

    void on_open() {
        const auto& seq = *ctx_.sequencer;
        nlohmann::json scenes = nlohmann::json::array();
        for (std::size_t s = 0; s < seq.program().scenes.size(); ++s)
            scenes.push_back({{"name", seq.program().scenes[s].name}, {"start", seq.scene_start(s)},
                              {"duration", seq.program().scenes[s].duration}});
        const nlohmann::json hello = {{"type", "hello"},
                                      {"led_count", seq.fixture().size()},
                                      {"fps", ctx_.fps},
                                      {"duration", seq.total_duration()},
                                      {"scenes", scenes}};
        send(hello.dump(), false);
        next_tick_ = std::chrono::steady_clock::now();
        read();
        tick();
    }

    void read() {
        ws_.async_read(in_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) return self->close();
            if (self->ws_.got_text())
                self->on_message(beast::buffers_to_string(self->in_.data()));
            else
                log("ignored binary message");
            self->in_.consume(self->in_.size());
            self->read();
        });
    }

    void on_message(const std::string& text) {
        try {
            const io::ClientMessage m = io::parse_client_message(text);
            playback_.apply(m);
            if (std::holds_alternative<io::PoseMessage>(m)) {
                const ViewPose& pose = playback_.pose();
                send(io::arcs_message(pose, io::project_arcs(ctx_.sequencer->complex(), pose)).dump(), false);
            }
        } catch (const io::MessageError& e) {
            log(std::string("ignored message: ") + e.what());
        }
    }

    void tick() {
        if (closed_) return;
        next_tick_ += std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(1 / ctx_.fps));
        timer_.expires_at(next_tick_);
        timer_.async_wait([self = shared_from_this()](beast::error_code ec) {
            if (ec || self->closed_) return;
            script::Frame f = self->playback_.next();
            if (self->queue_.size() < kMaxQueued) self->send(io::frame_payload(f), true);
            self->tick();
        });
    }

    void send(std::string data, bool binary) {
        queue_.push_back({std::move(data), binary});
        if (queue_.size() == 1) write();
    }

    void write() {
        ws_.binary(queue_.front().binary);
        ws_.async_write(asio::buffer(queue_.front().data), [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) return self->close();
            self->queue_.pop_front();
            if (!self->queue_.empty()) self->write();
        });
    }

    void close() {
        closed_ = true;
        timer_.cancel();
    }

    websocket::stream<beast::tcp_stream> ws_;
    const Context& ctx_;
    asio::steady_timer timer_;
    io::Playback playback_;
    beast::flat_buffer in_;
    std::deque<Outgoing> queue_;
    std::chrono::steady_clock::time_point next_tick_;
    bool closed_ = false;
};

class HttpSession : public std::enable_shared_from_this<HttpSession> {
public:
    HttpSession(tcp::socket&& socket, const Context& ctx) : stream_(std::move(socket)), ctx_(ctx) {}

    void start() {
        stream_.expires_after(std::chrono::seconds(30));
        http::async_read(stream_, buffer_, req_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (!ec) self->handle();
        });
    }

private:
    using Response = http::response<http::string_body>;

    Response reply(http::status status, std::string_view type, std::string body) const {
        Response res{status, req_.version()};
        res.set(http::field::server, "fourdlo");
        res.set(http::field::content_type, std::string(type));
        res.keep_alive(false);
        res.body() = std::move(body);
        res.prepare_payload();
        return res;
    }

    void handle() {
        const std::string target(req_.target().substr(0, req_.target().find('?')));
        if (websocket::is_upgrade(req_)) {
            if (target == "/frames") {
                stream_.expires_never();
                std::make_shared<FrameSession>(stream_.release_socket(), ctx_)->start(std::move(req_));
                return;
            }
            return respond(reply(http::status::not_found, "text/plain", "no websocket at " + target + "\n"));
        }
        if (req_.method() != http::verb::get && req_.method() != http::verb::head)
            return respond(reply(http::status::method_not_allowed, "text/plain", "GET only\n"));
        if (target == "/geometry.json") return respond(reply(http::status::ok, "application/json", ctx_.geometry));
        respond(static_file(target));
    }

    Response static_file(const std::string& target) const {
        const std::string rel = target == "/" ? "index.html" : target.substr(1);
        if (ctx_.assets.empty()) {
            if (rel == "index.html")
                return reply(http::status::ok, "text/plain", "fourdlo: GET /geometry.json, WebSocket /frames\n");
            return reply(http::status::not_found, "text/plain", "not found\n");
        }
        const std::filesystem::path p = std::filesystem::path(rel).lexically_normal();
        if (p.empty() || p.is_absolute() || *p.begin() == "..") return reply(http::status::forbidden, "text/plain", "forbidden\n");
        std::ifstream in(ctx_.assets / p, std::ios::binary);
        if (!in || std::filesystem::is_directory(ctx_.assets / p)) return reply(http::status::not_found, "text/plain", "not found\n");
        std::ostringstream body;
        body << in.rdbuf();
        return reply(http::status::ok, mime_type(p), body.str());
    }

    void respond(Response res) {
        auto sp = std::make_shared<Response>(std::move(res));
        if (req_.method() == http::verb::head) sp->body().clear();
        http::async_write(stream_, *sp, [self = shared_from_this(), sp](beast::error_code, std::size_t) {
            beast::error_code ignored;
            self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
        });
    }

    beast::tcp_stream stream_;
    const Context& ctx_;
    beast::flat_buffer buffer_;
    http::request<http::string_body> req_;
};

/// Binds host:port (port 0 picks one), reports the bound port through
/// `on_listen`, then serves until SIGINT or SIGTERM. Throws
/// boost::system::system_error if the address cannot be bound.
inline void run(const Context& ctx, const std::string& host, unsigned short port,
                const std::function<void(unsigned short)>& on_listen) {
    asio::io_context ioc(1);
    tcp::acceptor acceptor(ioc);
    const tcp::endpoint endpoint(asio::ip::make_address(host), port);
    acceptor.open(endpoint.protocol());
    acceptor.set_option(asio::socket_base::reuse_address(true));
    acceptor.bind(endpoint);
    acceptor.listen();
    on_listen(acceptor.local_endpoint().port());

    std::function<void()> accept = [&] {
        acceptor.async_accept([&](beast::error_code ec, tcp::socket socket) {
            if (ec == asio::error::operation_aborted) return;
            if (!ec) std::make_shared<HttpSession>(std::move(socket), ctx)->start();
            accept();
        });
    };
    accept();

    asio::signal_set signals(ioc, SIGINT, SIGTERM);
    signals.async_wait([&](beast::error_code, int) { ioc.stop(); });
    ioc.run();
}

}  // namespace fourdlo::serve
