// framing_server: HTTP front end for questionnaire sessions.
//
// Flags override the FRAMING_STORE, FRAMING_LISTEN and FRAMING_STATIC
// environment variables.

#include "framing/service.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <cstdlib>
#include <iostream>

namespace {

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::move(fallback);
}

}  // namespace

int main(int argc, char** argv) {
  std::string store_path = env_or("FRAMING_STORE", "responses.jsonl");
  std::string listen = env_or("FRAMING_LISTEN", "127.0.0.1:8080");
  std::string static_dir = env_or("FRAMING_STATIC", "");

  CLI::App app{"Framing-effect questionnaire service"};
  app.add_option("--store", store_path, "Record store file");
  app.add_option("--listen", listen, "host:port to bind");
  app.add_option("--static", static_dir, "Directory with the UI bundle");
  CLI11_PARSE(app, argc, argv);

  auto colon = listen.rfind(':');
  if (colon == std::string::npos) {
    std::cerr << "--listen must be host:port\n";
    return 2;
  }
  std::string host = listen.substr(0, colon);
  int port = std::atoi(listen.c_str() + colon + 1);

  std::shared_ptr<framing::RecordRepository> store;
  try {
    store = std::make_shared<framing::RecordStore>(store_path);
  } catch (const framing::Error& e) {
    // Keep serving so clients get a clear 503 instead of a dead socket.
    std::cerr << "record store unavailable: " << e.what() << "\n";
  }

  framing::ExperimentService service(store);
  httplib::Server server;
  std::optional<std::filesystem::path> assets;
  if (!static_dir.empty()) assets = static_dir;
  service.mount(server, assets);

  std::cout << "listening on " << host << ":" << port << " (store " << store_path << ")\n";
  if (!server.listen(host, port)) {
    std::cerr << "cannot bind " << listen << "\n";
    return 1;
  }
  return 0;
}
