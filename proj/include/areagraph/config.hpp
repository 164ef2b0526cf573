#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "areagraph/bezier_post.hpp"
#include "areagraph/force_layout.hpp"
#include "areagraph/geometry.hpp"
#include "areagraph/layered_layout.hpp"

namespace areagraph {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Config {
    DrawingArea area;
    force::ForceParams force;
    layered::LayeredParams layered;
    bezier::BezierParams bezier;
};

// "29.7x21" -> area; throws ConfigError.
DrawingArea parse_area(std::string_view text);

// Sets one field by key; throws ConfigError for unknown keys or bad values.
void set_config_value(Config& c, std::string_view key, std::string_view value);

// `key = value` lines; '#' starts a comment. Errors carry the line number.
void apply_config_text(Config& c, std::string_view text);
void apply_config_file(Config& c, const std::string& path);

std::vector<std::string> config_keys();

}  // namespace areagraph
