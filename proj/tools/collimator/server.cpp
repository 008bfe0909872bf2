#include "server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <istream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace collimator::cli {

void serve_stream(FrameService& service, std::istream& in, std::ostream& out) {
  for (const ojson& m : service.start()) {
    out << encode(m) << '\n';
  }
  out.flush();
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    for (const ojson& m : service.handle_line(line)) {
      out << encode(m) << '\n';
    }
    out.flush();
  }
}

namespace {

constexpr int kPollMs = 100;

class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  [[nodiscard]] int get() const { return fd_; }

 private:
  int fd_;
};

bool send_all(int fd, const std::string& data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    sent += static_cast<std::size_t>(n);
  }
  return true;
}

struct Shared {
  FrameService& service;
  std::mutex mutex;
  bool has_driver = false;
};

void handle_client(Shared& shared, Fd fd, std::atomic<bool>& stop) {
  bool driver = false;
  std::string greeting;
  {
    std::lock_guard lock(shared.mutex);
    if (!shared.has_driver) {
      shared.has_driver = true;
      driver = true;
      for (const ojson& m : shared.service.start()) greeting += encode(m) + '\n';
    } else {
      greeting = encode(shared.service.status()) + '\n';
    }
  }
  const int one = 1;
  ::setsockopt(fd.get(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);

  if (send_all(fd.get(), greeting)) {
    std::string buffer;
    char chunk[4096];
    while (!stop.load()) {
      pollfd p{fd.get(), POLLIN, 0};
      const int ready = ::poll(&p, 1, kPollMs);
      if (ready < 0 && errno != EINTR) break;
      if (ready <= 0) continue;
      const ssize_t n = ::recv(fd.get(), chunk, sizeof chunk, 0);
      if (n <= 0) break;
      buffer.append(chunk, static_cast<std::size_t>(n));

      std::string reply;
      std::size_t nl;
      while ((nl = buffer.find('\n')) != std::string::npos) {
        std::string line = buffer.substr(0, nl);
        buffer.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::lock_guard lock(shared.mutex);
        if (!driver && !shared.has_driver) {
          shared.has_driver = true;
          driver = true;
        }
        for (const ojson& m : shared.service.handle_line(line, !driver)) {
          reply += encode(m) + '\n';
        }
      }
      if (!reply.empty() && !send_all(fd.get(), reply)) break;
    }
  }
  if (driver) {
    std::lock_guard lock(shared.mutex);
    shared.has_driver = false;
  }
}

}  // namespace

void serve_tcp(FrameService& service, const TcpServeOptions& options, std::atomic<bool>& stop) {
  Fd listener(::socket(AF_INET, SOCK_STREAM, 0));
  if (listener.get() < 0) {
    throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
  }
  const int one = 1;
  ::setsockopt(listener.get(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(options.port);
  if (::bind(listener.get(), reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
    throw std::runtime_error("bind 127.0.0.1:" + std::to_string(options.port) + ": " +
                             std::strerror(errno));
  }
  if (::listen(listener.get(), 8) < 0) {
    throw std::runtime_error(std::string("listen: ") + std::strerror(errno));
  }
  socklen_t len = sizeof addr;
  ::getsockname(listener.get(), reinterpret_cast<sockaddr*>(&addr), &len);
  if (options.on_listening) {
    options.on_listening(ntohs(addr.sin_port));
  }

  Shared shared{service, {}, false};
  std::vector<std::jthread> clients;
  while (!stop.load()) {
    pollfd p{listener.get(), POLLIN, 0};
    const int ready = ::poll(&p, 1, kPollMs);
    if (ready <= 0) continue;
    const int fd = ::accept(listener.get(), nullptr, nullptr);
    if (fd < 0) continue;
    clients.emplace_back([&shared, &stop, fd] { handle_client(shared, Fd(fd), stop); });
  }
  // jthread destructors join; client loops notice `stop` within one poll period.
}

}  // namespace collimator::cli
