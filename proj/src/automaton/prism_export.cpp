#include "neusv/automaton/prism_export.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace neusv::automaton {

namespace {

std::string prob(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return buf;
}

std::string label_name(const std::string& id) {
    if (!id.empty() && std::isdigit(static_cast<unsigned char>(id.front()))) return "_" + id;
    return id;
}

} // namespace

std::string export_prism(const VideoAutomaton& a) {
    std::ostringstream os;
    const std::size_t last = a.state_count() - 1;
    os << "// video automaton: " << a.layer_count() << " layers, " << a.props().size() << " propositions\n";
    os << "dtmc\n\nmodule video\n";
    os << "  s : [0.." << last << "] init " << a.initial() << ";\n";
    for (StateId id = 0; id < a.state_count(); ++id) {
        const auto& st = a.state(id);
        os << "  // s=" << id << " layer " << st.layer << " " << st.label_text() << "\n";
        auto out = a.successors(id);
        if (id == a.terminal() && out.empty()) {
            os << "  [] s=" << id << " -> 1:(s'=" << id << ");\n";
            continue;
        }
        if (out.empty()) continue;
        os << "  [] s=" << id << " -> ";
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (k) os << " + ";
            os << prob(out[k].probability) << ":(s'=" << out[k].to << ")";
        }
        os << ";\n";
    }
    os << "endmodule\n\n";
    os << "label \"terminal\" = s=" << a.terminal() << ";\n";
    for (std::size_t i = 0; i < a.props().size(); ++i) {
        os << "label \"" << label_name(a.props()[i].id) << "\" = ";
        bool any = false;
        for (StateId id = 0; id < a.state_count(); ++id) {
            const auto& st = a.state(id);
            if (st.kind != StateKind::Window || !st.label.test(i)) continue;
            if (any) os << "|";
            os << "s=" << id;
            any = true;
        }
        if (!any) os << "false";
        os << ";\n";
    }
    return os.str();
}

} // namespace neusv::automaton
