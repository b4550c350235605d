#include "blamelab/runtime.hpp"

#include <json.hpp>

#include <cmath>

namespace blamelab {

namespace {

nlohmann::json to_json(Runtime& rt, const Value& v, const Span& where) {
    if (v.is_num()) {
        double d = v.num();
        if (!std::isfinite(d)) throw CrashError(CrashKind::ExportError, where, "non-finite number has no JSON form");
        if (d == std::trunc(d) && std::fabs(d) < 9007199254740992.0) return static_cast<std::int64_t>(d);
        return d;
    }
    if (v.is_str()) return v.str();
    if (v.is_bool()) return v.boolean();
    if (v.is_null()) return nullptr;
    if (v.is_array()) {
        auto out = nlohmann::json::array();
        for (const auto& item : v.array().items) out.push_back(to_json(rt, rt.force(item), where));
        return out;
    }
    if (v.is_record()) {
        auto out = nlohmann::json::object();
        for (const auto& [name, field] : v.record().fields) out[name] = to_json(rt, rt.force(field), where);
        return out;
    }
    throw CrashError(CrashKind::ExportError, where,
                     "a value of type " + std::string(v.type_name()) + " has no JSON representation");
}

}  // namespace

std::string export_json(Runtime& rt, const Value& v) { return to_json(rt, v, Span{}).dump(); }

}  // namespace blamelab
