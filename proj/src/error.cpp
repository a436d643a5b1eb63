#include "dyncolor/error.hpp"

namespace dyncolor {

std::string_view to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::self_loop: return "SelfLoop";
    case Errc::duplicate_edge: return "DuplicateEdge";
    case Errc::vertex_out_of_range: return "VertexOutOfRange";
    case Errc::invalid_color: return "InvalidColor";
    case Errc::empty_conflict_set: return "EmptyConflictSet";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::no_max_color_vertex: return "NoMaxColorVertex";
    case Errc::incompatible_size: return "IncompatibleSize";
    case Errc::class_violated: return "ClassViolated";
    case Errc::edge_exists: return "EdgeExists";
    case Errc::insufficient_components: return "InsufficientComponents";
    case Errc::too_large: return "TooLarge";
    case Errc::not_tree_instance: return "NotTreeInstance";
    case Errc::singular_system: return "SingularSystem";
    case Errc::config_invalid: return "ConfigInvalid";
    case Errc::scenario_generation_failed: return "ScenarioGenerationFailed";
    case Errc::degenerate_input: return "DegenerateInput";
    case Errc::unknown_suite: return "UnknownSuite";
    case Errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

} // namespace dyncolor
