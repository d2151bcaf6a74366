#pragma once

// Best-effort host telemetry for constrained devices: SoC temperature,
// memory, load, firmware throttle register and free disk. Every source is
// optional; a missing or unreadable source leaves its field empty.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include <sys/statvfs.h>

#include <nlohmann/json.hpp>

namespace searchathome {

struct ThrottleFlags {
  bool undervoltage_now = false;
  bool freq_capped_now = false;
  bool throttled_now = false;
  bool undervoltage_occurred = false;
  bool freq_capped_occurred = false;
  bool throttled_occurred = false;

  friend bool operator==(const ThrottleFlags&, const ThrottleFlags&) = default;
};

struct TelemetrySnapshot {
  std::int64_t taken_at_us = 0;  // microseconds since the Unix epoch
  std::optional<std::int64_t> cpu_temp_milli_c;
  std::optional<std::int64_t> mem_available_bytes;
  std::optional<std::int64_t> mem_total_bytes;
  std::optional<double> load_avg_1m;
  std::optional<ThrottleFlags> throttle;
  std::optional<std::int64_t> disk_free_bytes;

  friend bool operator==(const TelemetrySnapshot&, const TelemetrySnapshot&) = default;
};

// Accepts "0x50005", "50005" or "throttled=0x50005" (vcgencmd output).
inline ThrottleFlags parse_throttle_register(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  if (s.rfind("throttled=", 0) == 0) s.remove_prefix(10);
  if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
  if (s.empty() || s.size() > 16) {
    throw std::invalid_argument("parse_throttle_register: not a hex register: '" +
                                std::string(text) + "'");
  }
  std::uint64_t value = 0;
  for (const char c : s) {
    int digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
    else throw std::invalid_argument("parse_throttle_register: not a hex register: '" +
                                     std::string(text) + "'");
    value = (value << 4) | static_cast<std::uint64_t>(digit);
  }
  auto bit = [value](int b) { return ((value >> b) & 1U) != 0; };
  return {bit(0), bit(1), bit(2), bit(16), bit(17), bit(18)};
}

// Where sample_host looks. Empty paths are skipped.
struct HostSources {
  std::filesystem::path thermal_zone = "/sys/class/thermal/thermal_zone0/temp";
  std::filesystem::path meminfo = "/proc/meminfo";
  std::filesystem::path loadavg = "/proc/loadavg";
  std::filesystem::path throttle_register = "/sys/devices/platform/soc/soc:firmware/get_throttled";
  std::filesystem::path disk = "/";

  static HostSources none() { return {"", "", "", "", ""}; }
};

namespace telemetry_detail {

inline std::optional<std::string> read_text(const std::filesystem::path& p) {
  if (p.empty()) return std::nullopt;
  std::ifstream in(p);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

inline std::optional<std::int64_t> parse_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoll(s, &pos);
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// Parses a "Key:   12345 kB" line of /proc/meminfo into bytes.
inline std::optional<std::int64_t> meminfo_field(const std::string& text, std::string_view key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key, 0) == 0 && line.size() > key.size() && line[key.size()] == ':') {
      std::istringstream fields(line.substr(key.size() + 1));
      std::int64_t amount = 0;
      std::string unit;
      if (!(fields >> amount)) return std::nullopt;
      fields >> unit;
      return unit == "kB" ? amount * 1024 : amount;
    }
  }
  return std::nullopt;
}

inline void fill(const HostSources& src, TelemetrySnapshot& snap, std::mutex& mu) {
  if (auto t = read_text(src.thermal_zone)) {
    if (auto v = parse_int(*t)) {
      std::lock_guard lock(mu);
      snap.cpu_temp_milli_c = v;
    }
  }
  if (auto m = read_text(src.meminfo)) {
    auto avail = meminfo_field(*m, "MemAvailable");
    auto total = meminfo_field(*m, "MemTotal");
    std::lock_guard lock(mu);
    if (avail && total && *avail > *total) avail.reset();
    snap.mem_available_bytes = avail;
    snap.mem_total_bytes = total;
  }
  if (auto l = read_text(src.loadavg)) {
    std::istringstream in(*l);
    double one = 0;
    if (in >> one) {
      std::lock_guard lock(mu);
      snap.load_avg_1m = one;
    }
  }
  if (auto r = read_text(src.throttle_register)) {
    try {
      auto flags = parse_throttle_register(*r);
      std::lock_guard lock(mu);
      snap.throttle = flags;
    } catch (const std::invalid_argument&) {
    }
  }
  if (!src.disk.empty()) {
    struct statvfs vfs {};
    if (::statvfs(src.disk.c_str(), &vfs) == 0) {
      std::lock_guard lock(mu);
      snap.disk_free_bytes =
          static_cast<std::int64_t>(vfs.f_bavail) * static_cast<std::int64_t>(vfs.f_frsize);
    }
  }
}

inline std::int64_t now_us() {
  static std::mutex mu;
  static std::int64_t last = 0;
  const auto t = std::chrono::duration_cast<std::chrono::microseconds>(
                     std::chrono::system_clock::now().time_since_epoch())
                     .count();
  std::lock_guard lock(mu);
  last = std::max<std::int64_t>(t, last + 1);
  return last;
}

}  // namespace telemetry_detail

// Reads whatever sources respond within `deadline`. Sources that block
// (a stalled sysfs node, a FIFO) are abandoned on a detached reader thread.
inline TelemetrySnapshot sample_host(
    const HostSources& sources = {},
    std::chrono::milliseconds deadline = std::chrono::milliseconds(50)) {
  struct Shared {
    std::mutex mu;
    std::condition_variable cv;
    TelemetrySnapshot snap;
    bool done = false;
  };
  auto shared = std::make_shared<Shared>();
  shared->snap.taken_at_us = telemetry_detail::now_us();
  const auto until = std::chrono::steady_clock::now() + deadline;

  std::thread reader([shared, sources] {
    telemetry_detail::fill(sources, shared->snap, shared->mu);
    std::lock_guard lock(shared->mu);
    shared->done = true;
    shared->cv.notify_all();
  });

  std::unique_lock lock(shared->mu);
  const bool finished = shared->cv.wait_until(lock, until, [&] { return shared->done; });
  TelemetrySnapshot out = shared->snap;
  lock.unlock();
  if (finished) reader.join();
  else reader.detach();
  return out;
}

inline nlohmann::json to_json(const TelemetrySnapshot& s) {
  nlohmann::json j;
  j["taken_at_us"] = s.taken_at_us;
  auto put = [&j](const char* key, const auto& opt) {
    j[key] = opt ? nlohmann::json(*opt) : nlohmann::json(nullptr);
  };
  put("cpu_temp_milli_c", s.cpu_temp_milli_c);
  put("mem_available_bytes", s.mem_available_bytes);
  put("mem_total_bytes", s.mem_total_bytes);
  put("load_avg_1m", s.load_avg_1m);
  put("disk_free_bytes", s.disk_free_bytes);
  if (s.throttle) {
    const auto& t = *s.throttle;
    j["throttle"] = {{"undervoltage_now", t.undervoltage_now},
                     {"freq_capped_now", t.freq_capped_now},
                     {"throttled_now", t.throttled_now},
                     {"undervoltage_occurred", t.undervoltage_occurred},
                     {"freq_capped_occurred", t.freq_capped_occurred},
                     {"throttled_occurred", t.throttled_occurred}};
  } else {
    j["throttle"] = nullptr;
  }
  return j;
}

inline TelemetrySnapshot telemetry_from_json(const nlohmann::json& j) {
  TelemetrySnapshot s;
  s.taken_at_us = j.at("taken_at_us").get<std::int64_t>();
  auto get = [&j](const char* key, auto& opt) {
    using T = typename std::remove_reference_t<decltype(opt)>::value_type;
    if (j.contains(key) && !j.at(key).is_null()) opt = j.at(key).get<T>();
  };
  get("cpu_temp_milli_c", s.cpu_temp_milli_c);
  get("mem_available_bytes", s.mem_available_bytes);
  get("mem_total_bytes", s.mem_total_bytes);
  get("load_avg_1m", s.load_avg_1m);
  get("disk_free_bytes", s.disk_free_bytes);
  if (j.contains("throttle") && !j.at("throttle").is_null()) {
    const auto& t = j.at("throttle");
    s.throttle = ThrottleFlags{t.at("undervoltage_now").get<bool>(),
                               t.at("freq_capped_now").get<bool>(),
                               t.at("throttled_now").get<bool>(),
                               t.at("undervoltage_occurred").get<bool>(),
                               t.at("freq_capped_occurred").get<bool>(),
                               t.at("throttled_occurred").get<bool>()};
  }
  return s;
}

}  // namespace searchathome
