// HTTP front end over the selection core. Read-only: the registry file is
// reloaded whenever its modification time changes.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>

#include "macsel/service.hpp"

using namespace macsel;

int main(int argc, char** argv) {
    CLI::App app{"MAC protocol selection service"};
    std::string bind = "127.0.0.1";
    int port = 8080;
    std::string registry;
    std::string origin = "*";
    app.add_option("--bind", bind, "listen address")->capture_default_str();
    app.add_option("--port", port, "listen port")->capture_default_str()->check(CLI::Range(1, 65535));
    app.add_option("--registry", registry, "registry JSON (default: $MACSEL_REGISTRY)");
    app.add_option("--cors-origin", origin, "Access-Control-Allow-Origin value")->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (registry.empty()) {
        if (const char* env = std::getenv("MACSEL_REGISTRY"); env && *env) registry = env;
    }
    if (registry.empty()) {
        std::cerr << "usage error: pass --registry or set MACSEL_REGISTRY\n";
        return 2;
    }

    service::RegistryCache cache(registry);
    httplib::Server srv;
    srv.set_payload_max_length(1 << 20);
    srv.set_default_headers({{"Access-Control-Allow-Origin", origin},
                             {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                             {"Access-Control-Allow-Headers", "Content-Type"}});

    auto reply = [](httplib::Response& res, const service::ApiResponse& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    srv.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    srv.Get("/api/registry",
            [&](const httplib::Request&, httplib::Response& res) { reply(res, service::get_registry(cache)); });
    srv.Post("/api/evaluate",
             [&](const httplib::Request& req, httplib::Response& res) { reply(res, service::post_evaluate(req.body)); });
    srv.Post("/api/select", [&](const httplib::Request& req, httplib::Response& res) {
        reply(res, service::post_select(req.body, cache));
    });
    srv.Post("/api/sweep",
             [&](const httplib::Request& req, httplib::Response& res) { reply(res, service::post_sweep(req.body)); });

    std::cerr << "listening on " << bind << ":" << port << " (registry " << registry << ")\n";
    if (!srv.listen(bind, port)) {
        std::cerr << "error: cannot listen on " << bind << ":" << port << '\n';
        return 1;
    }
    return 0;
}
