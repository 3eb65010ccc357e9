#include "alcor/topology.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace alcor {

std::optional<ObjectClass> object_class_from_code(int code) {
    switch (code) {
    case 0: return ObjectClass::Plmn;
    case 10: return ObjectClass::Msc;
    case 12: return ObjectClass::MscBscLink;
    case 20: return ObjectClass::Bsc;
    case 23: return ObjectClass::BscBtsLink;
    case 30: return ObjectClass::Bts;
    default: return std::nullopt;
    }
}

bool is_link_class(ObjectClass c) {
    return c == ObjectClass::MscBscLink || c == ObjectClass::BscBtsLink;
}

std::optional<ObjectClass> legal_parent_class(ObjectClass c) {
    switch (c) {
    case ObjectClass::Plmn: return std::nullopt;
    case ObjectClass::Msc: return ObjectClass::Plmn;
    case ObjectClass::Bsc: return ObjectClass::Msc;
    case ObjectClass::Bts: return ObjectClass::Bsc;
    // circuits hang off the switching side of the link
    case ObjectClass::MscBscLink: return ObjectClass::Msc;
    case ObjectClass::BscBtsLink: return ObjectClass::Bsc;
    }
    return std::nullopt;
}

const char* object_class_name(ObjectClass c) {
    switch (c) {
    case ObjectClass::Plmn: return "PLMN";
    case ObjectClass::Msc: return "MSC";
    case ObjectClass::MscBscLink: return "MSC-BSC-link";
    case ObjectClass::Bsc: return "BSC";
    case ObjectClass::BscBtsLink: return "BSC-BTS-link";
    case ObjectClass::Bts: return "BTS";
    }
    return "?";
}

std::string to_string(const ElementId& id) {
    std::ostringstream os;
    os << object_class_name(id.object_class) << '(' << static_cast<int>(id.object_class)
       << ',' << id.object_instance << ')';
    return os.str();
}

UnknownClassCode::UnknownClassCode(int c)
    : TopologyError("unknown object class code " + std::to_string(c)), code(c) {}

IllegalParentClass::IllegalParentClass(const ElementId& element, const ElementId& parent)
    : TopologyError("illegal parent " + to_string(parent) + " for " + to_string(element)) {}

DanglingParent::DanglingParent(const ElementId& element, const ElementId& parent)
    : TopologyError("parent " + to_string(parent) + " of " + to_string(element) +
                    " is not defined") {}

ConflictingParent::ConflictingParent(const ElementId& element, const ElementId& a,
                                     const ElementId& b)
    : TopologyError("element " + to_string(element) + " listed with parents " + to_string(a) +
                    " and " + to_string(b)) {}

CycleDetected::CycleDetected(const ElementId& element)
    : TopologyError("parent chain of " + to_string(element) + " does not reach the root") {}

UnknownElement::UnknownElement(const ElementId& e)
    : TopologyError("element " + to_string(e) + " is not in the configuration model"),
      element(e) {}

ConfigModel ConfigModel::load(std::span<const ConfigRecord> records) {
    ConfigModel model;
    model.parent_[ElementId::root()] = std::nullopt;

    for (const auto& rec : records) {
        if (rec.element.is_root())
            throw IllegalParentClass(rec.element, rec.parent);
        if (rec.element.object_class == ObjectClass::Plmn)
            throw IllegalParentClass(rec.element, rec.parent); // class 0 admits only (0,0)
        auto want = legal_parent_class(rec.element.object_class);
        if (!want || rec.parent.object_class != *want)
            throw IllegalParentClass(rec.element, rec.parent);
        if (rec.parent.object_class == ObjectClass::Plmn && !rec.parent.is_root())
            throw IllegalParentClass(rec.element, rec.parent);

        auto [it, inserted] = model.parent_.emplace(rec.element, rec.parent);
        if (!inserted && *it->second != rec.parent)
            throw ConflictingParent(rec.element, *it->second, rec.parent);
    }

    // every parent must itself be defined
    for (const auto& [element, parent] : model.parent_) {
        if (parent && !model.parent_.contains(*parent))
            throw DanglingParent(element, *parent);
    }

    // With per-class legal parents the class codes strictly decrease along any
    // parent chain down to the root, so a chain can only fail to terminate if
    // a parent is missing (caught above). Walk anyway to keep the invariant
    // checked rather than argued.
    for (const auto& [element, parent] : model.parent_) {
        ElementId cur = element;
        std::size_t steps = 0;
        while (!cur.is_root()) {
            const auto& p = model.parent_.at(cur);
            if (!p || ++steps > model.parent_.size())
                throw CycleDetected(element);
            cur = *p;
        }
    }
    return model;
}

bool ConfigModel::contains(const ElementId& id) const {
    return parent_.contains(id);
}

std::vector<ElementId> ConfigModel::ancestors(const ElementId& id) const {
    auto it = parent_.find(id);
    if (it == parent_.end())
        throw UnknownElement(id);
    std::vector<ElementId> chain;
    ElementId cur = id;
    while (true) {
        const auto& p = parent_.at(cur);
        if (!p)
            break;
        chain.push_back(*p);
        cur = *p;
    }
    return chain;
}

bool ConfigModel::in_scope(const ElementId& scope_root, const ElementId& element) const {
    if (!parent_.contains(scope_root))
        throw UnknownElement(scope_root);
    if (element == scope_root)
        return true;
    for (const auto& a : ancestors(element))
        if (a == scope_root)
            return true;
    return false;
}

std::vector<ElementId> ConfigModel::elements() const {
    std::vector<ElementId> out;
    out.reserve(parent_.size());
    for (const auto& [id, _] : parent_)
        out.push_back(id);
    return out;
}

ConfigRecord make_record(int cls, std::uint32_t inst, int parent_cls, std::uint32_t parent_inst) {
    auto c = object_class_from_code(cls);
    auto p = object_class_from_code(parent_cls);
    if (!c)
        throw UnknownClassCode(cls);
    if (!p)
        throw UnknownClassCode(parent_cls);
    return ConfigRecord{{*c, inst}, {*p, parent_inst}};
}

namespace {

bool is_blank_or_comment(const std::string& line) {
    for (char ch : line) {
        if (ch == '#')
            return true;
        if (!std::isspace(static_cast<unsigned char>(ch)))
            return false;
    }
    return true;
}

} // namespace

std::vector<ConfigRecord> parse_topology(std::istream& in) {
    std::vector<ConfigRecord> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank_or_comment(line))
            continue;
        long long f[4];
        char extra;
        std::istringstream ls(line);
        char c1, c2, c3;
        if (!(ls >> f[0] >> c1 >> f[1] >> c2 >> f[2] >> c3 >> f[3]) || c1 != ',' ||
            c2 != ',' || c3 != ',' || (ls >> extra))
            throw TopologyError("topology line " + std::to_string(lineno) +
                                ": expected 4 comma-separated integers: " + line);
        for (long long v : f)
            if (v < 0)
                throw TopologyError("topology line " + std::to_string(lineno) +
                                    ": negative field: " + line);
        records.push_back(make_record(static_cast<int>(f[0]), static_cast<std::uint32_t>(f[1]),
                                      static_cast<int>(f[2]), static_cast<std::uint32_t>(f[3])));
    }
    return records;
}

ConfigModel load_topology_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open topology file: " + path);
    auto records = parse_topology(in);
    return ConfigModel::load(records);
}

void write_topology(std::ostream& out, std::span<const ConfigRecord> records) {
    out << "# object_class,object_instance,parent_object_class,parent_object_instance\n";
    for (const auto& rec : records) {
        out << static_cast<int>(rec.element.object_class) << ',' << rec.element.object_instance
            << ',' << static_cast<int>(rec.parent.object_class) << ','
            << rec.parent.object_instance << '\n';
    }
}

} // namespace alcor
