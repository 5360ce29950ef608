#include <nlohmann/json.hpp>

#include "spsw/error.hpp"
#include "spsw/fakegen.hpp"

// cpp-httplib pulls in OS headers; keep it out of the public headers.
#include <httplib.h>

namespace spsw {

using nlohmann::json;

std::vector<Tuple> external_generate(const Schema& schema,
                                     const std::vector<Tuple>& sample_rows,
                                     std::size_t count,
                                     const std::string& endpoint,
                                     int timeout_ms) {
  if (count < 1) throw ValidationError("count must be >= 1");
  if (endpoint.empty()) throw ValidationError("endpoint not configured");

  json request;
  request["schema"] = schema.attribute_names();
  request["sample_rows"] = sample_rows;
  request["count"] = count;

  // endpoint looks like http://host:port/path
  std::string host_part = endpoint;
  std::string path = "/";
  const auto scheme_end = host_part.find("://");
  if (scheme_end != std::string::npos) host_part.erase(0, scheme_end + 3);
  const auto slash = host_part.find('/');
  if (slash != std::string::npos) {
    path = host_part.substr(slash);
    host_part.erase(slash);
  }

  httplib::Client client("http://" + host_part);
  client.set_connection_timeout(0, timeout_ms * 1000);
  client.set_read_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);

  auto response = client.Post(path, request.dump(), "application/json");
  if (!response)
    throw TransportError("generator service unreachable: " + endpoint);
  if (response->status != 200)
    throw TransportError("generator service returned HTTP " +
                         std::to_string(response->status));

  json payload;
  try {
    payload = json::parse(response->body);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("generator response is not JSON: ") +
                      e.what() + "; payload: " + response->body);
  }
  if (!payload.contains("rows") || !payload["rows"].is_array())
    throw FormatError("generator response missing 'rows' array; payload: " +
                      response->body);

  std::vector<Tuple> rows;
  rows.reserve(payload["rows"].size());
  for (std::size_t i = 0; i < payload["rows"].size(); ++i) {
    const auto& row = payload["rows"][i];
    if (!row.is_array() || row.size() != schema.arity())
      throw FormatError("generator row " + std::to_string(i) +
                        " has wrong arity; payload: " + response->body);
    Tuple tuple;
    tuple.reserve(row.size());
    for (const auto& value : row) {
      if (value.is_string())
        tuple.push_back(value.get<std::string>());
      else
        tuple.push_back(value.dump());
    }
    rows.push_back(std::move(tuple));
  }
  if (rows.size() != count)
    throw FormatError("generator returned " + std::to_string(rows.size()) +
                      " rows, expected " + std::to_string(count) +
                      "; payload: " + response->body);
  return rows;
}

}  // namespace spsw
