#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "alcor/error.hpp"

namespace alcor {

/// GSM network element classes. The numeric codes are part of the wire
/// format (topology files, alarm logs) and must not be renumbered.
enum class ObjectClass : int {
    Plmn = 0,        ///< network root, exactly one instance (0,0)
    Msc = 10,        ///< mobile services switching center
    MscBscLink = 12, ///< data circuit between an MSC and a BSC
    Bsc = 20,        ///< base station controller
    BscBtsLink = 23, ///< data circuit between a BSC and a BTS
    Bts = 30,        ///< base transceiver station
};

/// Returns the class for a raw code, or nullopt for unknown codes.
std::optional<ObjectClass> object_class_from_code(int code);

/// True for the data-circuit classes (12 and 23).
bool is_link_class(ObjectClass c);

/// The only class a child of class `c` may be attached to, or nullopt
/// for the root (which has no parent).
std::optional<ObjectClass> legal_parent_class(ObjectClass c);

const char* object_class_name(ObjectClass c);

/// Identity of one network element: class plus serial number.
struct ElementId {
    ObjectClass object_class = ObjectClass::Plmn;
    std::uint32_t object_instance = 0;

    auto operator<=>(const ElementId&) const = default;

    static ElementId root() { return {ObjectClass::Plmn, 0}; }
    bool is_root() const { return *this == root(); }
};

std::string to_string(const ElementId& id);

/// One line of the configuration model: an element and its parent.
struct ConfigRecord {
    ElementId element;
    ElementId parent;

    auto operator<=>(const ConfigRecord&) const = default;
};

class TopologyError : public Error {
public:
    using Error::Error;
};

class UnknownClassCode : public TopologyError {
public:
    explicit UnknownClassCode(int code);
    int code;
};

class IllegalParentClass : public TopologyError {
public:
    IllegalParentClass(const ElementId& element, const ElementId& parent);
};

class DanglingParent : public TopologyError {
public:
    DanglingParent(const ElementId& element, const ElementId& parent);
};

class ConflictingParent : public TopologyError {
public:
    ConflictingParent(const ElementId& element, const ElementId& a, const ElementId& b);
};

class CycleDetected : public TopologyError {
public:
    explicit CycleDetected(const ElementId& element);
};

class UnknownElement : public TopologyError {
public:
    explicit UnknownElement(const ElementId& element);
    ElementId element;
};

/// The validated GSM configuration tree. Immutable after load; all query
/// methods are safe to call concurrently.
class ConfigModel {
public:
    /// Builds and validates a model from configuration records. The root
    /// (0,0) is always present, listed or not. Duplicate identical records
    /// are accepted; conflicting ones are not.
    static ConfigModel load(std::span<const ConfigRecord> records);

    bool contains(const ElementId& id) const;

    /// Parent chain from `id`'s parent up to and including the root.
    /// The root yields an empty chain.
    std::vector<ElementId> ancestors(const ElementId& id) const;

    /// True iff `element` lies in the subtree rooted at `scope_root`
    /// (including scope_root itself).
    bool in_scope(const ElementId& scope_root, const ElementId& element) const;

    std::size_t size() const { return parent_.size(); }

    /// All elements in canonical (class, instance) order.
    std::vector<ElementId> elements() const;

private:
    // root maps to nullopt
    std::map<ElementId, std::optional<ElementId>> parent_;
};

/// Convenience for building records without repeating ObjectClass casts.
ConfigRecord make_record(int cls, std::uint32_t inst, int parent_cls, std::uint32_t parent_inst);

/// Parses the plain-text topology format: one record per line,
/// `object_class,object_instance,parent_object_class,parent_object_instance`,
/// `#` comments and blank lines ignored.
std::vector<ConfigRecord> parse_topology(std::istream& in);

/// Reads and validates a topology file in one step.
ConfigModel load_topology_file(const std::string& path);

/// Writes records in the plain-text topology format.
void write_topology(std::ostream& out, std::span<const ConfigRecord> records);

} // namespace alcor
