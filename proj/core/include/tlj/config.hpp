#ifndef TLJ_CONFIG_HPP
#define TLJ_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tlj/errors.hpp"
#include "tlj/vec3.hpp"

namespace tlj {

// Line-oriented `key = value` file. '#' starts a comment, blank lines are
// skipped, later keys override earlier ones. Also backs the run manifests,
// which is why insertion order is preserved on write.
class KeyValueFile {
  public:
    KeyValueFile() = default;

    static KeyValueFile parse(std::istream& is);
    static KeyValueFile parse_file(const std::string& path);

    bool has(const std::string& key) const;
    std::optional<std::string> get(const std::string& key) const;

    std::string require(const std::string& key) const;
    double require_double(const std::string& key) const;

    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    Vec3 get_vec3(const std::string& key, const Vec3& fallback) const;

    void set(const std::string& key, const std::string& value);
    void set_double(const std::string& key, double value);
    void set_int(const std::string& key, long value);

    void write(std::ostream& os) const;
    void write_file(const std::string& path) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const { return order_; }

  private:
    std::map<std::string, std::string> values_;
    std::vector<std::pair<std::string, std::string>> order_;
};

}  // namespace tlj

#endif
