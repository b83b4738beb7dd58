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

#ifndef MORPHANN_HTTP_SERVER_H_
#define MORPHANN_HTTP_SERVER_H_

#include <memory>
#include <string>

#include "morphann/service.h"

namespace morphann {

// Serves a Service over HTTP/1.1. When static_dir is non-empty its files
// are mounted at "/".
class HttpServer {
 public:
  HttpServer(Service& service, const std::string& static_dir = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds, then blocks serving requests until Stop().
  void Listen(const std::string& host, int port);
  // Binds an ephemeral port and returns it; call Serve() afterwards.
  int BindToAnyPort(const std::string& host);
  void Serve();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Performs one request against base_url ("http://host:port").
// Transport failures raise kIo.
HttpResponse HttpCall(const std::string& base_url, const HttpRequest& request);

}  // namespace morphann

#endif  // MORPHANN_HTTP_SERVER_H_
