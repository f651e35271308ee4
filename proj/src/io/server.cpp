#include "hyperforge/io/server.h"

#include "hyperforge/errors.h"
#include "hyperforge/io/circuit_file.h"
#include "hyperforge/io/dot.h"
#include "hyperforge/oracle/verify.h"

// After Eigen: resolv.h defines a _res macro that clashes with Eigen internals.
#include <httplib.h>

namespace hyperforge::io {

using nlohmann::json;

namespace {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedInput:
    case ErrorCode::kUnsupportedOp:
      return 400;
    case ErrorCode::kStateTerminated:
      return 409;
    default:
      return 422;
  }
}

json error_body(const HyperforgeError& e) {
  json err{{"code", std::string(e.code_name())}, {"message", e.what()}};
  if (const auto* ce = dynamic_cast<const CircuitError*>(&e)) err["step"] = ce->step();
  return {{"error", std::move(err)}};
}

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& msg) {
  send_json(res, {{"error", {{"code", code}, {"message", msg}}}}, status);
}

std::string_view job_status_name(Job::Status s) {
  switch (s) {
    case Job::Status::kPending:
      return "pending";
    case Job::Status::kRunning:
      return "running";
    case Job::Status::kDone:
      return "done";
    case Job::Status::kFailed:
      return "failed";
  }
  return "unknown";
}

json job_json(const std::string& id, Job& job) {
  json out{{"job", id}, {"status", job_status_name(job.status)}};
  if (job.status == Job::Status::kDone || job.status == Job::Status::kFailed) {
    for (const auto& [k, v] : job.result.items()) out[k] = v;
  }
  return out;
}

// Runs a handler body, mapping errors to status codes.
template <class F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const HyperforgeError& e) {
    send_json(res, error_body(e), http_status(e.code()));
  } catch (const json::exception& e) {
    send_error(res, 400, "MalformedInput", e.what());
  }
}

struct VerifyRequest {
  GaussianOp op;
  std::vector<ModeId> modes;
  PhasePolynomial before;
  PhasePolynomial after;
  oracle::FockConfig cfg;
  oracle::VerifyOptions opts;
};

json run_verify(const VerifyRequest& req) {
  auto res = oracle::verify_rule(req.op, req.before, req.after, req.cfg, req.opts);
  auto pred = oracle::formula_prediction(req.op, req.cfg, req.opts);
  return {{"rule", std::string(op_name(req.op))},
          {"op", op_to_json(req.op)},
          {"r", req.cfg.default_squeezing},
          {"cutoff", req.cfg.cutoff},
          {"backend", std::string(oracle::backend_name(req.opts.backend))},
          {"fidelity", res.fidelity},
          {"formula_prediction", pred ? json(*pred) : json(nullptr)},
          {"leakage", res.leakage},
          {"error_estimate", res.error_estimate}};
}

}  // namespace

Service::Service(ServerOptions opts) : opts_(opts), http_(std::make_unique<httplib::Server>()) {
  routes();
}

Service::~Service() {
  stop();
  for (auto& w : workers_) {
    if (w.joinable()) w.join();
  }
}

int Service::bind(const std::string& host, int port) {
  if (port == 0) return http_->bind_to_any_port(host);
  if (!http_->bind_to_port(host, port)) {
    throw HyperforgeError(ErrorCode::kInvalidArgument, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void Service::listen() { http_->listen_after_bind(); }

void Service::start() {
  listener_ = std::thread([this] { listen(); });
  http_->wait_until_ready();
}

void Service::stop() {
  if (http_) http_->stop();
  if (listener_.joinable()) listener_.join();
}

std::shared_ptr<Session> Service::find_session(const std::string& id) {
  std::lock_guard lock(store_mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::shared_ptr<Job> Service::find_job(const std::string& id) {
  std::lock_guard lock(store_mu_);
  auto it = jobs_.find(id);
  return it == jobs_.end() ? nullptr : it->second;
}

void Service::routes() {
  auto& srv = *http_;

  // Resolves {id}, answering 404 itself when the session is unknown.
  auto with_session = [this](const httplib::Request& req, httplib::Response& res, auto&& body) {
    auto session = find_session(req.path_params.at("id"));
    if (!session) {
      send_error(res, 404, "UnknownSession", "no session '" + req.path_params.at("id") + "'");
      return;
    }
    std::lock_guard lock(session->mu);
    guarded(res, [&] { body(*session); });
  };

  srv.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      json body = req.body.empty() ? json::object() : parse_json(req.body);
      // A bare {"modes": [...]} body is a circuit without ops.
      if (body.is_object() && !body.contains("version")) body["version"] = kFormatVersion;
      EngineState st = replay(circuit_from_json(body));
      auto session = std::make_shared<Session>();
      session->state = std::move(st);
      std::string id;
      {
        std::lock_guard lock(store_mu_);
        id = "s" + std::to_string(next_session_++);
        sessions_[id] = session;
      }
      send_json(res, {{"id", id}, {"state", decomposition_to_json(session->state)}}, 201);
    });
  });

  srv.Get("/sessions/:id/state", [with_session](const httplib::Request& req, httplib::Response& res) {
    with_session(req, res, [&](Session& s) { send_json(res, decomposition_to_json(s.state)); });
  });

  srv.Post("/sessions/:id/ops", [with_session](const httplib::Request& req, httplib::Response& res) {
    with_session(req, res, [&](Session& s) {
      GaussianOp op = op_from_json(parse_json(req.body));
      s.state = apply_op(s.state, op);
      send_json(res, {{"state", decomposition_to_json(s.state)}});
    });
  });

  srv.Post("/sessions/:id/undo", [with_session](const httplib::Request& req, httplib::Response& res) {
    with_session(req, res, [&](Session& s) {
      s.state = undo(s.state);
      send_json(res, {{"state", decomposition_to_json(s.state)}});
    });
  });

  srv.Post("/sessions/:id/verify", [this, with_session](const httplib::Request& req,
                                                        httplib::Response& res) {
    with_session(req, res, [&](Session& s) {
      json body = req.body.empty() ? json::object() : parse_json(req.body);
      if (s.state.history.empty()) {
        throw HyperforgeError(ErrorCode::kInvalidArgument, "no operation to verify");
      }
      EngineState prev = undo(s.state);
      VerifyRequest vr{s.state.history.back().op, prev.active_modes, prev.phase, s.state.phase, {}, {}};
      vr.cfg.modes = prev.active_modes;
      vr.cfg.default_squeezing = body.value("r", opts_.default_r);
      vr.cfg.cutoff = body.value("cutoff", opts_.default_cutoff);
      std::string backend = body.value("backend", "conditioned");
      if (backend == "dense") {
        vr.opts.backend = oracle::Backend::kDense;
      } else if (backend != "conditioned") {
        throw HyperforgeError(ErrorCode::kMalformedInput, "unknown backend '" + backend + "'");
      }
      vr.cfg.validate();

      auto job = std::make_shared<Job>();
      std::string id;
      {
        std::lock_guard lock(store_mu_);
        id = "j" + std::to_string(next_job_++);
        jobs_[id] = job;
        workers_.emplace_back([job, vr = std::move(vr)] {
          {
            std::lock_guard lock(job->mu);
            job->status = Job::Status::kRunning;
          }
          json result;
          Job::Status status = Job::Status::kDone;
          try {
            result = run_verify(vr);
          } catch (const HyperforgeError& e) {
            result = error_body(e);
            status = Job::Status::kFailed;
          } catch (const std::exception& e) {
            result = {{"error", {{"code", "InternalError"}, {"message", e.what()}}}};
            status = Job::Status::kFailed;
          }
          {
            std::lock_guard lock(job->mu);
            job->result = std::move(result);
            job->status = status;
          }
          job->cv.notify_all();
        });
      }
      std::unique_lock lock(job->mu);
      if (body.value("wait", false)) {
        job->cv.wait(lock, [&] {
          return job->status == Job::Status::kDone || job->status == Job::Status::kFailed;
        });
        send_json(res, job_json(id, *job));
      } else {
        send_json(res, job_json(id, *job), 202);
      }
    });
  });

  srv.Get("/jobs/:id", [this](const httplib::Request& req, httplib::Response& res) {
    auto job = find_job(req.path_params.at("id"));
    if (!job) {
      send_error(res, 404, "UnknownJob", "no job '" + req.path_params.at("id") + "'");
      return;
    }
    std::lock_guard lock(job->mu);
    send_json(res, job_json(req.path_params.at("id"), *job));
  });

  srv.Get("/sessions/:id/export", [with_session](const httplib::Request& req, httplib::Response& res) {
    with_session(req, res, [&](Session& s) {
      std::string format = req.has_param("format") ? req.get_param_value("format") : "circuit";
      if (format == "dot") {
        res.set_content(to_dot(s.state), "text/vnd.graphviz");
      } else if (format == "circuit") {
        res.set_content(serialize(circuit_of(s.state)), "application/json");
      } else {
        throw HyperforgeError(ErrorCode::kMalformedInput, "unknown export format '" + format + "'");
      }
    });
  });
}

}  // namespace hyperforge::io
