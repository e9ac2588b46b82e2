#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace pherm::symkernel {

/// Ordered table of scalar symbol names with a conjugation involution.
/// Tables are built once, frozen behind a shared_ptr, and shared by every
/// expression of a given context; expressions from different tables do not mix.
class SymbolTable {
public:
    /// Adds a self-conjugate (real) symbol, returns its id.
    int add(const std::string& name) {
        int id = add_raw(name);
        conj_.push_back(id);
        return id;
    }

    /// Adds a conjugate pair, returns the id of the first; the second is id+1.
    int add_pair(const std::string& name, const std::string& conj_name) {
        int a = add_raw(name);
        conj_.push_back(a + 1);
        int b = add_raw(conj_name);
        conj_.push_back(a);
        (void)b;
        return a;
    }

    int find(const std::string& name) const {
        for (size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<int>(i);
        return -1;
    }

    int require(const std::string& name) const {
        int id = find(name);
        if (id < 0) throw std::invalid_argument("SymbolTable: unknown symbol '" + name + "'");
        return id;
    }

    int conj_of(int id) const { return conj_.at(static_cast<size_t>(id)); }
    const std::string& name(int id) const { return names_.at(static_cast<size_t>(id)); }
    int size() const { return static_cast<int>(names_.size()); }

private:
    int add_raw(const std::string& name) {
        if (find(name) >= 0) throw std::invalid_argument("SymbolTable: duplicate symbol '" + name + "'");
        names_.push_back(name);
        return static_cast<int>(names_.size()) - 1;
    }

    std::vector<std::string> names_;
    std::vector<int> conj_;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

}  // namespace pherm::symkernel
