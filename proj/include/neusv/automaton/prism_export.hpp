#pragma once

#include <string>

#include "neusv/automaton/video_automaton.hpp"

namespace neusv::automaton {

/// Renders the automaton as a PRISM `dtmc` model with one integer state
/// variable `s`, one label per proposition and a "terminal" label. The
/// terminal state gets a self-loop so the model is a proper DTMC.
std::string export_prism(const VideoAutomaton& a);

} // namespace neusv::automaton
