"""Single-pass weight-balanced tree: repair while descending.

Insertion walks the tree exactly once. At each node it first bumps the
node's weight (the new key will land in this subtree), then checks whether
that pending arrival would overload one side, using child weights with a +1
on the side the key descends into. If so it rotates at the current position,
single or double per the gamma test, where the gamma test also anticipates
which grandchild subtree the key will land in. After a rotation the descent
re-aims by comparing the key against the node now occupying the position and
carries on downward; at most one rotation happens per level, which bounds
work even for parameter sets with no balance guarantee.

One wrinkle: the gamma test may pick a double rotation whose rising pivot
is the key's own empty slot (the inner grandchild position the key is headed
for, currently nil). Rotating the tree-as-it-will-be then simply means
building the new node at the current position, with the old occupant and its
heavy child as the two children; the insertion is complete at that moment.
Downgrading to a single rotation here instead would leave the heavy child
lopsided and is the main source of persistent imbalance for tight parameter
pairs. The empty-slot case can only arise on the branch where the key heads
for the inner grandchild: a nil inner can never win the gamma test on the
outer branch, since that would need gamma < 1/2.

Deletion mirrors this with decrements: weights drop on arrival, and the
repair check anticipates the side about to shrink (child weight minus one
against delta times the other side). The heavy child in a deletion repair is
always on the side the descent is not taking, so its grandchild weights feed
the gamma test unadjusted. A two-child delete relinks the in-order
predecessor into the doomed node's place during the same downward pass,
decrementing and repairing along the continued path to the predecessor. If
the key turns out to be absent, a second pass back up the parent chain
restores the decremented weights and the delete reports False; rotations
already made are kept, as they leave the tree structurally sound.
"""

from __future__ import annotations

from .core import NIL, Direction, Node, Tree, rotate_double, rotate_single


class TopDownTree(Tree):

    def insert(self, key) -> Node:
        nil = NIL
        v = self.root
        if v is nil:
            node = Node(key, nil, nil, nil, 2)
            self.root = node
            self.size = 1
            self.last_changed = node
            sink = self.sink
            if sink is not None:
                sink.touch_count += 1
            return node
        dn = self._dn
        dd = self._dd
        touches = 0
        while True:
            touches += 1
            v.weight += 1
            if key <= v.key:
                l = v.left
                # Pending arrival on the left: overload iff (|L|+1) > |R|*delta.
                if l is not nil and (l.weight + 1) * dd > v.right.weight * dn:
                    s, node = self._insert_repair_left(v, key)
                    if node is not None:
                        touches += 2
                        break
                    if s is not v:
                        touches += 2
                        s.weight += 1
                        v = s
            else:
                r = v.right
                if r is not nil and (r.weight + 1) * dd > v.left.weight * dn:
                    s, node = self._insert_repair_right(v, key)
                    if node is not None:
                        touches += 2
                        break
                    if s is not v:
                        touches += 2
                        s.weight += 1
                        v = s
            # Descend one level, re-aimed against the current occupant.
            if key <= v.key:
                c = v.left
                if c is nil:
                    node = Node(key, nil, nil, v, 2)
                    v.left = node
                    break
            else:
                c = v.right
                if c is nil:
                    node = Node(key, nil, nil, v, 2)
                    v.right = node
                    break
            v = c
        self.size += 1
        self.last_changed = node
        # Descent rotations may scribble on the sentinel's parent; rest it.
        nil.parent = nil
        sink = self.sink
        if sink is not None:
            sink.touch_count += touches + 1
        return node

    def _insert_repair_left(self, v: Node, key):
        # Left side will be too heavy once the key lands. l is real here.
        l = v.left
        inner = l.right
        outer = l.left
        gn = self._gn
        gd = self._gd
        if key <= l.key:
            dbl = inner.weight * gd > (outer.weight + 1) * gn
        else:
            dbl = (inner.weight + 1) * gd > outer.weight * gn
            if dbl and inner is NIL:
                # The rising pivot is the key's own empty slot: build the
                # node right here and the insertion is done. Booked as the
                # double it stands in for, with tree-as-it-will-be weights.
                sink = self.sink
                if sink is not None:
                    sink.record_double(l.weight + 1, v.weight)
                return v, self._materialize(v, l, v, key)
        if dbl:
            return rotate_double(self, v, Direction.RIGHT), None
        return rotate_single(self, v, Direction.RIGHT), None

    def _insert_repair_right(self, v: Node, key):
        r = v.right
        inner = r.left
        outer = r.right
        gn = self._gn
        gd = self._gd
        if key > r.key:
            dbl = inner.weight * gd > (outer.weight + 1) * gn
        else:
            dbl = (inner.weight + 1) * gd > outer.weight * gn
            if dbl and inner is NIL:
                sink = self.sink
                if sink is not None:
                    sink.record_double(r.weight + 1, v.weight)
                return v, self._materialize(v, v, r, key)
        if dbl:
            return rotate_double(self, v, Direction.LEFT), None
        return rotate_single(self, v, Direction.LEFT), None

    def _materialize(self, v: Node, a: Node, b: Node, key) -> Node:
        # New node at v's position with children (a, b); a keeps only its
        # left subtree, b only its right. All three weights are rebuilt from
        # scratch, which absorbs the optimistic +1 v took on arrival.
        nil = NIL
        g = v.parent
        a.right = nil
        a.weight = a.left.weight + 1
        b.left = nil
        b.weight = 1 + b.right.weight
        node = Node(key, a, b, g, a.weight + b.weight)
        a.parent = node
        b.parent = node
        if g is nil:
            self.root = node
        elif g.left is v:
            g.left = node
        else:
            g.right = node
        return node

    def delete(self, key) -> bool:
        nil = NIL
        v = self.root
        if v is nil:
            return False
        dn = self._dn
        dd = self._dd
        v.weight -= 1
        repaired = False
        touches = 1
        while True:
            k = v.key
            if key == k:
                l = v.left
                r = v.right
                if l is nil or r is nil:
                    self._splice_out(v)
                    self.size -= 1
                    sink = self.sink
                    if sink is not None:
                        sink.touch_count += touches
                    return True
                # Two children: the predecessor will leave the left subtree.
                if not repaired and r.weight * dd > (l.weight - 1) * dn:
                    s = self._delete_repair(v, raise_right=True)
                    if s is not v:
                        touches += 2
                        s.weight -= 1
                        v = s
                        repaired = True
                        continue
                touches += self._remove_two_child(v)
                self.size -= 1
                sink = self.sink
                if sink is not None:
                    sink.touch_count += touches
                return True
            if key < k:
                c = v.left
                if c is nil:
                    self._rollback(v)
                    sink = self.sink
                    if sink is not None:
                        sink.touch_count += touches
                    return False
                # Left side is about to shrink; check the right overhang.
                if not repaired and v.right.weight * dd > (c.weight - 1) * dn:
                    s = self._delete_repair(v, raise_right=True)
                    if s is not v:
                        touches += 2
                        s.weight -= 1
                        v = s
                        repaired = True
                        continue
            else:
                c = v.right
                if c is nil:
                    self._rollback(v)
                    sink = self.sink
                    if sink is not None:
                        sink.touch_count += touches
                    return False
                if not repaired and v.left.weight * dd > (c.weight - 1) * dn:
                    s = self._delete_repair(v, raise_right=False)
                    if s is not v:
                        touches += 2
                        s.weight -= 1
                        v = s
                        repaired = True
                        continue
            repaired = False
            v = c
            v.weight -= 1
            touches += 1

    def _delete_repair(self, v: Node, raise_right: bool) -> Node:
        # Heavy child sits opposite the shrinking side; the deletion target
        # is never inside it, so the gamma test reads current weights.
        gn = self._gn
        gd = self._gd
        if raise_right:
            h = v.right
            if h.left.weight * gd > h.right.weight * gn:
                return rotate_double(self, v, Direction.LEFT)
            return rotate_single(self, v, Direction.LEFT)
        h = v.left
        if h.right.weight * gd > h.left.weight * gn:
            return rotate_double(self, v, Direction.RIGHT)
        return rotate_single(self, v, Direction.RIGHT)

    def _remove_two_child(self, v: Node) -> int:
        # Continue the downward pass to the predecessor, then relink it into
        # v's position. Decrement on arrival; one repair chance per level.
        nil = NIL
        dn = self._dn
        dd = self._dd
        u = v.left
        u.weight -= 1
        touches = 1
        repaired = False
        while u.right is not nil:
            if not repaired and u.left.weight * dd > (u.right.weight - 1) * dn:
                s = self._delete_repair(u, raise_right=False)
                if s is not u:
                    touches += 2
                    s.weight -= 1
                    u = s
                    repaired = True
                    continue
            repaired = False
            u = u.right
            u.weight -= 1
            touches += 1

        p = u.parent
        if p is v:
            # Predecessor is v's direct left child and keeps its own left
            # subtree; it only gains v's right side.
            u.right = v.right
            v.right.parent = u
            self.last_changed = u
        else:
            lu = u.left
            p.right = lu
            lu.parent = p
            u.left = v.left
            v.left.parent = u
            u.right = v.right
            v.right.parent = u
            self.last_changed = p
        g = v.parent
        u.parent = g
        if g is nil:
            self.root = u
        elif g.left is v:
            g.left = u
        else:
            g.right = u
        u.weight = u.left.weight + u.right.weight
        nil.parent = nil
        return touches

    def _splice_out(self, v: Node):
        nil = NIL
        c = v.left if v.left is not nil else v.right
        p = v.parent
        c.parent = p
        if p is nil:
            self.root = c
        elif p.left is v:
            p.left = c
        else:
            p.right = c
        self.last_changed = p if p is not nil else None
        nil.parent = nil

    def _rollback(self, v: Node):
        # Absent key: undo the optimistic decrements along the current
        # ancestor chain. Rotations performed on the way down stay.
        nil = NIL
        while v is not nil:
            v.weight += 1
            v = v.parent
        nil.parent = nil
