#include "eres/log.hpp"

#include <iostream>
#include <mutex>

namespace eres {

namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

WarningSink& sink() {
  static WarningSink s = [](std::string_view m) { std::cerr << "warning: " << m << '\n'; };
  return s;
}

}  // namespace

WarningSink set_warning_sink(WarningSink s) {
  std::lock_guard lock(sink_mutex());
  auto old = std::move(sink());
  sink() = std::move(s);
  return old;
}

void warn(std::string_view message) {
  std::lock_guard lock(sink_mutex());
  if (sink()) sink()(message);
}

}  // namespace eres
