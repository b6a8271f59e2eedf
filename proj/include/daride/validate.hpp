#pragma once

#include <string>
#include <vector>

#include "daride/instance.hpp"
#include "daride/schedule.hpp"

namespace daride {

struct Violation {
    enum class Kind {
        PickNotPresent,    // object not available at the vehicle's position
        PickWhileCarried,  // object already inside some vehicle
        PickMidEdge,
        DropMidEdge,
        DropNotCarried,
        CapacityExceeded,
        NotDelivered,
        InTransitAtEnd,
        VehicleNotAtDepot,  // final position differs from depot
    };
    Kind kind;
    int vehicle = -1;
    int object = -1;
    int round = -1;
    std::string detail;
};

std::string violation_str(const Violation& v);

struct ObjectReport {
    int preemptions = 0;               // drops at vertices other than the destination
    std::vector<int> preempt_vertices;  // in drop order
    bool delivered = false;
};

struct VehicleReport {
    Rat completion{0};     // barrier time of the vehicle's last action
    long long max_load = 0;  // max simultaneous carried weight
};

struct ValidationReport {
    bool feasible = false;
    Rat makespan{0};
    std::vector<Violation> violations;
    std::vector<ObjectReport> objects;
    std::vector<VehicleReport> vehicles;
};

// Pure function of (inst, sched). Structural breaches (bad ids, offsets out of
// range, wrong vehicle count) throw; semantic infeasibility is reported.
//
// Availability rule: a pick of object o at vertex x is legal iff o currently
// sits at x, meaning o started there, or was dropped there in a strictly
// earlier round, or was dropped there earlier in the same round by the same
// vehicle.
ValidationReport validate(const Instance& inst, const Schedule& sched);

}  // namespace daride
