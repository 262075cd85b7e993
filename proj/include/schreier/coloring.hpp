#pragma once

// Colorings of finite sets: the built-in registry and external processes
// that answer one set literal per line.

#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <csignal>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "schreier/finite_set.hpp"

namespace schreier {

/// A total coloring of finite sets into {1, ..., colors}. `name` is the
/// literal that make_coloring accepts, so certificates can rebuild it.
struct Coloring {
  std::string name;
  std::uint32_t colors = 2;
  std::function<std::uint32_t(SetView)> color;
};

inline Coloring parity_sum_coloring() {
  return {"parity-sum", 2, [](SetView s) {
            std::uint64_t sum = 0;
            for (Element x : s) sum += x;
            return sum % 2 == 0 ? 1u : 2u;
          }};
}

/// 1 when the set is spread out (max - min > 2|s|), else 2.
inline Coloring span_threshold_coloring() {
  return {"span-threshold", 2, [](SetView s) {
            if (s.empty()) return 2u;
            return s.back() - s.front() > 2 * s.size() ? 1u : 2u;
          }};
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Pseudorandom but deterministic: each set's color is a hash of the seed
/// and its elements.
inline Coloring hash_coloring(std::uint64_t seed, std::uint32_t colors = 2) {
  if (colors == 0) throw std::invalid_argument("a coloring needs at least one color");
  std::string name = "hash:" + std::to_string(seed);
  if (colors != 2) name += ":" + std::to_string(colors);
  return {name, colors, [seed, colors](SetView s) {
            std::uint64_t h = detail::splitmix64(seed ^ 0x5ca1ab1eULL);
            for (Element x : s) h = detail::splitmix64(h ^ x);
            h = detail::splitmix64(h ^ s.size());
            return static_cast<std::uint32_t>(h % colors) + 1;
          }};
}

/// A child process that reads set literals (`{1,4,9}`) on stdin and writes
/// one color per line. Answers are cached; the process lives as long as the
/// last copy of the coloring.
class ExternalColoring {
 public:
  ExternalColoring(std::string command, std::uint32_t colors)
      : command_(std::move(command)), colors_(colors) {
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0)
      throw std::runtime_error("cannot create pipes for external coloring");
    pid_ = fork();
    if (pid_ < 0) throw std::runtime_error("cannot fork external coloring");
    if (pid_ == 0) {
      dup2(to_child[0], STDIN_FILENO);
      dup2(from_child[1], STDOUT_FILENO);
      close(to_child[0]);
      close(to_child[1]);
      close(from_child[0]);
      close(from_child[1]);
      execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
      _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    in_ = fdopen(to_child[1], "w");
    out_ = fdopen(from_child[0], "r");
    if (!in_ || !out_) throw std::runtime_error("cannot open pipes for external coloring");
    std::signal(SIGPIPE, SIG_IGN);
  }

  ExternalColoring(const ExternalColoring&) = delete;
  ExternalColoring& operator=(const ExternalColoring&) = delete;

  ~ExternalColoring() {
    if (in_) std::fclose(in_);
    if (out_) std::fclose(out_);
    if (pid_ > 0) waitpid(pid_, nullptr, 0);
  }

  std::uint32_t operator()(SetView s) {
    FiniteSet key(s);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::string line = to_string(s) + "\n";
    if (std::fputs(line.c_str(), in_) == EOF || std::fflush(in_) != 0)
      throw std::runtime_error("external coloring '" + command_ + "' closed its input");
    char buf[64];
    if (!std::fgets(buf, sizeof buf, out_))
      throw std::runtime_error("external coloring '" + command_ + "' gave no answer for " +
                               to_string(s));
    char* end = nullptr;
    unsigned long c = std::strtoul(buf, &end, 10);
    if (end == buf || c < 1 || c > colors_)
      throw std::runtime_error("external coloring '" + command_ + "' answered '" +
                               std::string(detail::trim(buf)) + "' for " + to_string(s));
    cache_.emplace(std::move(key), static_cast<std::uint32_t>(c));
    return static_cast<std::uint32_t>(c);
  }

 private:
  std::string command_;
  std::uint32_t colors_;
  pid_t pid_ = -1;
  FILE* in_ = nullptr;
  FILE* out_ = nullptr;
  std::map<FiniteSet, std::uint32_t> cache_;
};

inline Coloring external_coloring(std::string command, std::uint32_t colors = 2) {
  auto proc = std::make_shared<ExternalColoring>(command, colors);
  return {"external:" + command, colors, [proc](SetView s) { return (*proc)(s); }};
}

/// Builds a coloring from its literal: `parity-sum`, `span-threshold`,
/// `hash:<seed>[:<colors>]`, or `external:<shell command>`.
inline Coloring make_coloring(std::string_view literal) {
  literal = detail::trim(literal);
  if (literal == "parity-sum") return parity_sum_coloring();
  if (literal == "span-threshold") return span_threshold_coloring();
  if (literal.starts_with("external:")) return external_coloring(std::string(literal.substr(9)));
  if (literal.starts_with("hash:")) {
    std::string_view rest = literal.substr(5);
    std::uint32_t colors = 2;
    if (auto colon = rest.find(':'); colon != std::string_view::npos) {
      auto c = detail::parse_element_list(rest.substr(colon + 1));
      if (c.size() != 1 || c[0] == 0) throw std::invalid_argument("bad color count");
      colors = c[0];
      rest = rest.substr(0, colon);
    }
    std::string seed_text(rest);
    std::size_t used = 0;
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(seed_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != seed_text.size())
      throw std::invalid_argument("bad seed in coloring '" + std::string(literal) + "'");
    return hash_coloring(seed, colors);
  }
  throw std::invalid_argument("unknown coloring '" + std::string(literal) + "'");
}

}  // namespace schreier
