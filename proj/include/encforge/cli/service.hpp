#pragma once

// Local HTTP+JSON inference service over a frozen model.
//
//   GET  /model                      {"K","T","H","variant"}
//   POST /decode       {"z":[K]}  -> {"s1":[[x,y]...],"s2":[[x,y]...]}
//   POST /rationality  {"z":[K]}  -> distance/speed/direction profiles
//   GET  /sweep?code=k[&lo&hi&step] -> {"code","frames":[{"value","s1","s2"}]}
//
// Malformed requests get 400 with {"error", "field"}. Handlers only read
// the model, so concurrent requests are safe.

#include <optional>
#include <string>

#include "encforge/model/model.hpp"

namespace httplib {
class Server;
}

namespace encforge::cli {

struct HttpResponse {
  int status = 200;
  std::string body;
};

class InferenceService {
 public:
  explicit InferenceService(model::ModelParams params);

  const model::ModelParams& params() const { return params_; }

  HttpResponse model_info() const;
  HttpResponse decode(const std::string& body) const;
  HttpResponse rationality(const std::string& body) const;
  HttpResponse sweep(const std::optional<std::string>& code, const std::optional<std::string>& lo,
                     const std::optional<std::string>& hi,
                     const std::optional<std::string>& step) const;

  // Registers the routes on `server`; the service must outlive it.
  void install(httplib::Server& server) const;

 private:
  model::ModelParams params_;
};

// Blocks serving on host:port until the process is stopped.
void serve(const InferenceService& service, const std::string& host, int port);

}  // namespace encforge::cli
