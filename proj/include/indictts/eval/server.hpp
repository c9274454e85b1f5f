#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "indictts/common/error.hpp"
#include "indictts/eval/store.hpp"

namespace indictts::eval {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path staticDir;  // served at / when set
};

// HTTP front end over an EvalStore:
//   POST /sessions                        create a session
//   GET  /sessions/{id}                   public session info
//   GET  /sessions/{id}/next?listener=ID  next unrated stimulus
//   GET  /audio/{stimulusId}              WAV bytes
//   POST /ratings                         submit one rating
//   GET  /results/{id}                    statistics for the session kind
//   GET  /aggregate?sessions=a,b          DMOS aggregate over sessions
//   POST /mcd                             batch MCD between two directories
// Errors come back as {"error": <code name>, "message": ...}.
class EvalServer {
 public:
  EvalServer(EvalStore& store, ServerOptions options);
  ~EvalServer();
  EvalServer(const EvalServer&) = delete;
  EvalServer& operator=(const EvalServer&) = delete;

  // Binds and serves on a background thread; returns the bound port.
  int start();
  // Binds and serves on the calling thread until stop().
  void run();
  void stop();
  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// HTTP status for an error code.
int http_status(ErrorCode code);

}  // namespace indictts::eval
