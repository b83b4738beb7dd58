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

#include "morphann/http_server.h"

#include <algorithm>
#include <cctype>

#include "httplib.h"
#include "morphann/error.h"

namespace morphann {

namespace {

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

HttpRequest FromHttplib(const httplib::Request& r) {
  HttpRequest req;
  req.method = r.method;
  req.path = r.path;
  for (const auto& [k, v] : r.params) req.query[k] = v;
  for (const auto& [k, v] : r.headers) req.headers[Lower(k)] = v;
  req.body = r.body;
  return req;
}

}  // namespace

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;

  explicit Impl(Service& s) : service(s) {}
};

HttpServer::HttpServer(Service& service, const std::string& static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  auto handler = [this](const httplib::Request& r, httplib::Response& res) {
    const HttpResponse out = impl_->service.Handle(FromHttplib(r));
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  const std::string pattern = R"(/api/.*)";
  impl_->server.Get(pattern, handler);
  impl_->server.Post(pattern, handler);
  impl_->server.Put(pattern, handler);
  impl_->server.Delete(pattern, handler);
  if (!static_dir.empty() && !impl_->server.set_mount_point("/", static_dir)) {
    throw Error(ErrorCode::kIo, "static directory not found: " + static_dir);
  }
}

HttpServer::~HttpServer() { Stop(); }

void HttpServer::Listen(const std::string& host, int port) {
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorCode::kIo,
                "cannot bind " + host + ":" + std::to_string(port));
  }
  Serve();
}

int HttpServer::BindToAnyPort(const std::string& host) {
  const int port = impl_->server.bind_to_any_port(host);
  if (port < 0) throw Error(ErrorCode::kIo, "cannot bind " + host);
  return port;
}

void HttpServer::Serve() { impl_->server.listen_after_bind(); }

void HttpServer::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::WaitUntilReady() const { impl_->server.wait_until_ready(); }

HttpResponse HttpCall(const std::string& base_url, const HttpRequest& request) {
  httplib::Client client(base_url);
  client.set_connection_timeout(5);
  client.set_read_timeout(60);
  httplib::Headers headers;
  for (const auto& [k, v] : request.headers) headers.emplace(k, v);
  std::string target = request.path;
  if (!request.query.empty()) {
    httplib::Params params(request.query.begin(), request.query.end());
    target = httplib::append_query_params(target, params);
  }
  httplib::Result res;
  if (request.method == "GET") {
    res = client.Get(target, headers);
  } else if (request.method == "POST") {
    res = client.Post(target, headers, request.body, "application/json");
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unsupported method " + request.method);
  }
  if (!res) {
    throw Error(ErrorCode::kIo, "request to " + base_url + " failed: " +
                                    httplib::to_string(res.error()));
  }
  HttpResponse out;
  out.status = res->status;
  out.body = res->body;
  out.content_type = res->get_header_value("Content-Type");
  return out;
}

}  // namespace morphann
