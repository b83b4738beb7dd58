// Copyright 2026 The Morphann Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MORPHANN_SERVICE_H_
#define MORPHANN_SERVICE_H_

// HTTP+JSON API over a Workspace. Service::Handle is transport-neutral so
// it can be driven directly in tests; http_server.h binds it to a socket.
//
// Authentication is "Authorization: Bearer <token>" with tokens from
// POST /api/login. Errors come back as {"code", "message", "details"};
// version conflicts are 409. POST requests carrying an "Idempotency-Key"
// header are answered once and replayed from cache on retry.

#include <map>
#include <mutex>
#include <string>

#include "morphann/error.h"
#include "morphann/workspace.h"

namespace morphann {

struct HttpRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;  // lower-case names
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

int HttpStatusFor(ErrorCode code);
HttpResponse ErrorResponse(const Error& e);

class Service {
 public:
  explicit Service(Workspace& workspace) : ws_(workspace) {}

  HttpResponse Handle(const HttpRequest& request);
  // Skips bearer authentication and acts as `actor`. Used by in-process
  // clients such as the command line tool in direct-store mode.
  HttpResponse HandleAs(const Actor& actor, const HttpRequest& request);

 private:
  HttpResponse Dispatch(const HttpRequest& request, const Actor* as);

  Workspace& ws_;
  std::mutex idempotency_mu_;
  std::map<std::string, HttpResponse> idempotency_cache_;
};

}  // namespace morphann

#endif  // MORPHANN_SERVICE_H_
