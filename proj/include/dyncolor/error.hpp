#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dyncolor {

enum class Errc {
    self_loop,
    duplicate_edge,
    vertex_out_of_range,
    invalid_color,
    empty_conflict_set,
    precondition_violated,
    no_max_color_vertex,
    incompatible_size,
    class_violated,
    edge_exists,
    insufficient_components,
    too_large,
    not_tree_instance,
    singular_system,
    config_invalid,
    scenario_generation_failed,
    degenerate_input,
    unknown_suite,
    parse_error,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace dyncolor
