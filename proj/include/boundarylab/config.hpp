#ifndef BOUNDARYLAB_CONFIG_HPP
#define BOUNDARYLAB_CONFIG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace boundarylab {

// Configuration and argument problems; the CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sections by name; "" holds keys that appear before any section header.
using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

// Parses an INI-like file: [section] headers, key=value lines, blank lines
// and #/; comments. Syntax errors name the line, unknown sections and keys
// name the offender. Every section and key is validated against the
// subcommand schemas, not just the ones in use.
SectionMap parse_config_file(const std::string& path);

// Fully resolved run parameters for one subcommand.
struct RunConfig {
    std::string subcommand;
    std::uint64_t seed = 42;
    int threads = 0;  // resolved worker count (>= 1) after "auto" handling
    bool check = false;
    std::string output_dir = "out";
    std::map<std::string, std::string> params;  // schema keys, defaults filled
};

// Known keys and defaults for one subcommand.
const std::map<std::string, std::string>& subcommand_schema(const std::string& name);
const std::vector<std::string>& subcommand_names();

// Layered resolution: schema defaults, then the config file (top level for
// seed/threads/out, the [subcommand] section for params), then key=value
// arguments, then explicit flag values. Bare "mitigation" is sugar for
// kind=mitigation on the bound subcommand. Unknown keys raise ConfigError.
RunConfig resolve_run(const std::string& subcommand, const SectionMap& file_config,
                      const std::vector<std::string>& kv_args,
                      const std::string& seed_flag, const std::string& threads_flag,
                      const std::string& out_flag, bool check_flag);

// Strict numeric parsers used for CLI values; errors name the key.
std::uint64_t parse_u64(const std::string& value, const std::string& key);
std::int64_t parse_i64(const std::string& value, const std::string& key);
double parse_real(const std::string& value, const std::string& key);
bool parse_bool(const std::string& value, const std::string& key);

// "4..64" (inclusive range) or "4,8,16" (explicit list) into integers.
std::vector<std::int64_t> parse_int_list(const std::string& value,
                                         const std::string& key);

// Comma-separated reals, e.g. an extent or a point.
std::vector<double> parse_real_list(const std::string& value, const std::string& key);

}  // namespace boundarylab

#endif  // BOUNDARYLAB_CONFIG_HPP
