#include "daride/validate.hpp"

#include <algorithm>
#include <stdexcept>

namespace daride {

std::string violation_str(const Violation& v) {
    const char* names[] = {"pick-not-present", "pick-while-carried", "pick-mid-edge",
                           "drop-mid-edge",    "drop-not-carried",   "capacity-exceeded",
                           "not-delivered",    "in-transit-at-end",  "vehicle-not-at-depot"};
    std::string s = names[static_cast<int>(v.kind)];
    if (v.vehicle >= 0) s += " vehicle=" + std::to_string(v.vehicle);
    if (v.object >= 0) s += " object=" + std::to_string(v.object);
    if (v.round >= 0) s += " round=" + std::to_string(v.round);
    if (!v.detail.empty()) s += " (" + v.detail + ")";
    return s;
}

namespace {

struct ObjState {
    bool carried = false;
    int carrier = -1;
    int vertex = 0;       // valid when !carried
    int drop_round = -1;  // round where it last became available; -1 = initial
    int drop_vehicle = -1;
};

void check_structure(const Instance& inst, const Schedule& sched) {
    if (sched.q != inst.q()) throw std::invalid_argument("validate: vehicle count mismatch");
    for (const auto& round : sched.rounds) {
        if (static_cast<int>(round.size()) != sched.q)
            throw std::invalid_argument("validate: round vehicle list size mismatch");
        for (const auto& actions : round)
            for (const auto& act : actions) {
                switch (act.kind) {
                    case Action::Kind::Move:
                        if (act.a < 0 || act.a >= inst.n())
                            throw std::invalid_argument("validate: move target out of range");
                        break;
                    case Action::Kind::MoveMid: {
                        if (act.a < 0 || act.a >= inst.n() || act.b < 0 || act.b >= inst.n())
                            throw std::invalid_argument("validate: movemid endpoint out of range");
                        Rat len = inst.metric.at(act.a, act.b);
                        if (act.off < Rat(0) || act.off > len)
                            throw std::invalid_argument("validate: movemid offset out of range");
                        break;
                    }
                    case Action::Kind::Pick:
                    case Action::Kind::Drop:
                        if (act.obj < 0 || act.obj >= inst.m())
                            throw std::invalid_argument("validate: object id out of range");
                        break;
                    case Action::Kind::Wait:
                        break;
                }
            }
    }
}

}  // namespace

ValidationReport validate(const Instance& inst, const Schedule& sched) {
    check_structure(inst, sched);

    ValidationReport rep;
    rep.objects.assign(inst.m(), {});
    rep.vehicles.assign(inst.q(), {});

    std::vector<Pos> pos(inst.q());
    std::vector<std::vector<int>> carried(inst.q());
    std::vector<long long> load(inst.q(), 0);
    for (int j = 0; j < inst.q(); ++j) pos[j] = Pos::vertex(inst.depots[j]);

    std::vector<ObjState> obj(inst.m());
    for (int i = 0; i < inst.m(); ++i) obj[i].vertex = inst.demands[i].s;

    Rat clock(0);  // barrier time at the start of the current round
    for (int r = 0; r < sched.num_rounds(); ++r) {
        Rat round_max(0);
        for (int j = 0; j < inst.q(); ++j) {
            Rat t(0);
            bool acted = false;
            for (const auto& act : sched.rounds[r][j]) {
                switch (act.kind) {
                    case Action::Kind::Move:
                    case Action::Kind::MoveMid: {
                        Pos to = act.target();
                        // normalize degenerate mid-edge targets to vertices
                        if (!to.is_vertex()) {
                            Rat len = inst.metric.at(to.u, to.v);
                            if (to.off == Rat(0)) to = Pos::vertex(to.u);
                            else if (to.off == len) to = Pos::vertex(to.v);
                        }
                        t += pos_dist(inst.metric, pos[j], to);
                        pos[j] = to;
                        acted = true;
                        break;
                    }
                    case Action::Kind::Pick: {
                        acted = true;
                        int o = act.obj;
                        if (!pos[j].is_vertex()) {
                            rep.violations.push_back(
                                {Violation::Kind::PickMidEdge, j, o, r, ""});
                            break;
                        }
                        if (obj[o].carried) {
                            rep.violations.push_back(
                                {Violation::Kind::PickWhileCarried, j, o, r, ""});
                            break;
                        }
                        bool present = obj[o].vertex == pos[j].u &&
                                       (obj[o].drop_round < r ||
                                        (obj[o].drop_round == r && obj[o].drop_vehicle == j));
                        if (!present) {
                            rep.violations.push_back(
                                {Violation::Kind::PickNotPresent, j, o, r,
                                 "object at vertex " + std::to_string(obj[o].vertex)});
                            break;
                        }
                        obj[o].carried = true;
                        obj[o].carrier = j;
                        carried[j].push_back(o);
                        load[j] += inst.demands[o].w;
                        rep.vehicles[j].max_load = std::max(rep.vehicles[j].max_load, load[j]);
                        if (load[j] > inst.capacity)
                            rep.violations.push_back(
                                {Violation::Kind::CapacityExceeded, j, o, r,
                                 "load " + std::to_string(load[j])});
                        break;
                    }
                    case Action::Kind::Drop: {
                        acted = true;
                        int o = act.obj;
                        if (!pos[j].is_vertex()) {
                            rep.violations.push_back(
                                {Violation::Kind::DropMidEdge, j, o, r, ""});
                            break;
                        }
                        if (!obj[o].carried || obj[o].carrier != j) {
                            rep.violations.push_back(
                                {Violation::Kind::DropNotCarried, j, o, r, ""});
                            break;
                        }
                        obj[o].carried = false;
                        obj[o].carrier = -1;
                        obj[o].vertex = pos[j].u;
                        obj[o].drop_round = r;
                        obj[o].drop_vehicle = j;
                        carried[j].erase(std::find(carried[j].begin(), carried[j].end(), o));
                        load[j] -= inst.demands[o].w;
                        if (pos[j].u != inst.demands[o].t) {
                            rep.objects[o].preemptions += 1;
                            rep.objects[o].preempt_vertices.push_back(pos[j].u);
                        }
                        break;
                    }
                    case Action::Kind::Wait:
                        break;
                }
                if (acted) rep.vehicles[j].completion = clock + t;
            }
            round_max = std::max(round_max, t);
        }
        clock += round_max;
    }
    rep.makespan = clock;

    for (int j = 0; j < inst.q(); ++j) {
        if (!(pos[j].is_vertex() && pos[j].u == inst.depots[j]))
            rep.violations.push_back({Violation::Kind::VehicleNotAtDepot, j, -1, -1, ""});
    }
    for (int i = 0; i < inst.m(); ++i) {
        if (obj[i].carried) {
            rep.violations.push_back({Violation::Kind::InTransitAtEnd, obj[i].carrier, i, -1, ""});
        } else if (obj[i].vertex == inst.demands[i].t) {
            rep.objects[i].delivered = true;
        } else {
            rep.violations.push_back({Violation::Kind::NotDelivered, -1, i, -1,
                                      "at vertex " + std::to_string(obj[i].vertex)});
        }
    }
    rep.feasible = rep.violations.empty();
    return rep;
}

}  // namespace daride
