#include "indictts/eval/server.hpp"

#include <thread>

#include "indictts/common/error.hpp"
#include "indictts/common/tsv.hpp"
#include "indictts/eval/batch_mcd.hpp"
#include "indictts/features/matrix_io.hpp"
// After Eigen: resolv.h (pulled in by httplib) defines a `_res` macro that
// collides with Eigen parameter names.
#include "httplib.h"

namespace indictts::eval {

namespace {

using nlohmann::json;

constexpr const char* kJson = "application/json";

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  send_json(res, {{"error", std::string(to_string(code))}, {"message", message}}, http_status(code));
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("request body is not JSON: ") + e.what());
  }
}

// Runs a handler and turns library errors into JSON error responses.
template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, e.code(), e.what());
    } catch (const std::exception& e) {
      send_json(res, {{"error", "Internal"}, {"message", e.what()}}, 500);
    }
  };
}

json stimulus_ref(const Stimulus& s) { return {{"stimulusId", s.id}, {"audioUrl", "/audio/" + s.id}}; }

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const auto part = trim(std::string_view(s).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (!part.empty()) out.emplace_back(part);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession:
    case ErrorCode::UnknownStimulus: return 404;
    case ErrorCode::DuplicateRating:
    case ErrorCode::NoRatings: return 409;
    case ErrorCode::OutOfScale:
    case ErrorCode::WrongKind: return 422;
    case ErrorCode::IoError: return 500;
    default: return 400;
  }
}

struct EvalServer::Impl {
  EvalStore& store;
  ServerOptions options;
  httplib::Server http;
  std::thread thread;
  int boundPort = -1;

  Impl(EvalStore& s, ServerOptions o) : store(s), options(std::move(o)) { routes(); }

  void routes() {
    http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
    http.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    http.Get("/health", [](const httplib::Request&, httplib::Response& res) { send_json(res, {{"status", "ok"}}); });

    http.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
                send_json(res, to_json(store.create_session(parse_body(req))), 201);
              }));

    http.Get(R"(/sessions/([A-Za-z0-9_]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
               const auto snap = store.snapshot();
               const TestSession& s = snap->session(req.matches[1].str());
               // Roles stay server-side so presentation remains blind.
               json j = {{"id", s.id},
                         {"kind", to_string(s.kind)},
                         {"listenerCount", s.listenerCount},
                         {"stimulusCount", s.rated_indices().size()}};
               if (!s.optionLabels.empty()) j["optionLabels"] = s.optionLabels;
               send_json(res, j);
             }));

    http.Get(R"(/sessions/([A-Za-z0-9_]+)/next)", guarded([this](const httplib::Request& req, httplib::Response& res) {
               const std::string listener = req.get_param_value("listener");
               if (listener.empty()) throw Error(ErrorCode::InvalidArgument, "listener query parameter is required");
               const std::string id = req.matches[1].str();
               const NextStimulus next = store.next_stimulus(id, listener);
               const auto snap = store.snapshot();
               const TestSession& s = snap->session(id);
               json refs = json::array();
               for (const auto& r : next.references) refs.push_back(stimulus_ref(r));
               json j = {{"sessionId", id},
                         {"listenerId", listener},
                         {"kind", to_string(s.kind)},
                         {"done", !next.stimulus.has_value()},
                         {"progress", {{"completed", next.completed}, {"total", next.total}}},
                         {"references", refs}};
               j["stimulus"] = next.stimulus ? stimulus_ref(*next.stimulus) : json(nullptr);
               if (!s.optionLabels.empty()) j["optionLabels"] = s.optionLabels;
               send_json(res, j);
             }));

    http.Get(R"(/audio/([A-Za-z0-9_\-]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
               const auto [session, stimulus] = store.find_stimulus(req.matches[1].str());
               std::string bytes;
               try {
                 bytes = read_file(stimulus.audioPath);
               } catch (const Error&) {
                 throw Error(ErrorCode::MissingStimulus, "audio for '" + stimulus.id + "' is gone");
               }
               res.set_content(std::move(bytes), "audio/wav");
             }));

    http.Post("/ratings", guarded([this](const httplib::Request& req, httplib::Response& res) {
                RatingRecord r = rating_from_json(parse_body(req));
                r.timestamp.clear();  // the server stamps submissions
                send_json(res, to_json(store.submit_rating(std::move(r))), 201);
              }));

    http.Get(R"(/results/([A-Za-z0-9_]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
               send_json(res, store.results(req.matches[1].str()));
             }));

    http.Get("/aggregate", guarded([this](const httplib::Request& req, httplib::Response& res) {
               const auto ids = split_commas(req.get_param_value("sessions"));
               if (ids.empty()) throw Error(ErrorCode::InvalidArgument, "sessions query parameter is required");
               json j = to_json(store.aggregate(ids));
               j["sessionIds"] = ids;
               send_json(res, j);
             }));

    http.Post("/mcd", guarded([](const httplib::Request& req, httplib::Response& res) {
                const json body = parse_body(req);
                if (!body.contains("refDir") || !body.contains("synDir")) {
                  throw Error(ErrorCode::InvalidArgument, "refDir and synDir are required");
                }
                BatchMcdOptions opts;
                if (body.contains("params")) opts.params = features::mel_params_from_json(body["params"]);
                opts.order = body.value("order", opts.order);
                const auto report = batch_mcd(body["refDir"].get<std::string>(), body["synDir"].get<std::string>(), opts);
                if (body.contains("report")) write_report(body["report"].get<std::string>(), report);
                send_json(res, to_json(report));
              }));

    if (!options.staticDir.empty()) http.set_mount_point("/", options.staticDir.string());
  }

  int bind() {
    if (options.port == 0) {
      boundPort = http.bind_to_any_port(options.host);
    } else {
      boundPort = http.bind_to_port(options.host, options.port) ? options.port : -1;
    }
    if (boundPort < 0) {
      throw Error(ErrorCode::IoError, "cannot bind " + options.host + ":" + std::to_string(options.port));
    }
    return boundPort;
  }
};

EvalServer::EvalServer(EvalStore& store, ServerOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {}

EvalServer::~EvalServer() { stop(); }

int EvalServer::start() {
  const int port = impl_->bind();
  impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->http.wait_until_ready();
  return port;
}

void EvalServer::run() {
  impl_->bind();
  impl_->http.listen_after_bind();
}

void EvalServer::stop() {
  if (!impl_) return;
  impl_->http.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int EvalServer::port() const { return impl_->boundPort; }

}  // namespace indictts::eval
