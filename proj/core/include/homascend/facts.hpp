#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace homascend {

/// Flat key/value record used by gallery and suite reports.
using FactValue = std::variant<bool, std::int64_t, std::string, std::vector<std::int64_t>>;

class Facts {
 public:
  void set(std::string key, FactValue v) {
    for (auto& kv : items_)
      if (kv.first == key) {
        kv.second = std::move(v);
        return;
      }
    items_.emplace_back(std::move(key), std::move(v));
  }
  void set(std::string key, const char* v) { set(std::move(key), FactValue(std::string(v))); }
  void set(std::string key, std::int64_t v) { set(std::move(key), FactValue(v)); }
  void set(std::string key, bool v) { set(std::move(key), FactValue(v)); }
  void set(std::string key, std::string v) { set(std::move(key), FactValue(std::move(v))); }
  void set(std::string key, int v) { set(std::move(key), FactValue(static_cast<std::int64_t>(v))); }
  void set(std::string key, std::size_t v) { set(std::move(key), FactValue(static_cast<std::int64_t>(v))); }
  const std::vector<std::pair<std::string, FactValue>>& items() const { return items_; }
  const FactValue* get(const std::string& key) const {
    for (const auto& kv : items_)
      if (kv.first == key) return &kv.second;
    return nullptr;
  }
  bool get_bool(const std::string& key) const {
    const auto* v = get(key);
    return v && std::holds_alternative<bool>(*v) && std::get<bool>(*v);
  }

 private:
  std::vector<std::pair<std::string, FactValue>> items_;
};

}  // namespace homascend
