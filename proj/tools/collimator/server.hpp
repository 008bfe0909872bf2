#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>

#include "collimator/frame_service.hpp"

namespace collimator::cli {

/// Runs the frame protocol over stdin/stdout-like streams until EOF.
void serve_stream(FrameService& service, std::istream& in, std::ostream& out);

struct TcpServeOptions {
  /// 0 picks an ephemeral port.
  std::uint16_t port = 0;
  /// Called once the socket is listening, with the bound port.
  std::function<void(std::uint16_t)> on_listening;
};

/// Serves the frame protocol on 127.0.0.1 until `stop` becomes true. The
/// first connected client drives the session; further clients are
/// read-only (status / target) until the driver disconnects.
void serve_tcp(FrameService& service, const TcpServeOptions& options, std::atomic<bool>& stop);

}  // namespace collimator::cli
