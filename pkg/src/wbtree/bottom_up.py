"""Two-pass weight-balanced tree: plain BST edit, then repair on the way up.

The downward pass finds the edit point exactly as an unbalanced BST would.
The upward pass walks the ancestor chain from the edit point to the root,
refreshing each node's weight from its children and repairing any overhang
with a single or double rotation chosen by the gamma test. Every ancestor is
re-checked; deletions can push imbalance arbitrarily far up, so there is no
early exit.
"""

from __future__ import annotations

from .core import (NIL, Direction, Node, Tree, rotate_double, rotate_single,
                   subtree_maximum)


class BottomUpTree(Tree):

    def insert(self, key) -> Node:
        nil = NIL
        v = self.root
        node = Node(key, nil, nil, nil, 2)
        if v is nil:
            self.root = node
            self.size = 1
            self.last_changed = node
            return node
        touches = 1
        while True:
            touches += 1
            if key <= v.key:
                c = v.left
                if c is nil:
                    v.left = node
                    break
            else:
                c = v.right
                if c is nil:
                    v.right = node
                    break
            v = c
        node.parent = v
        self.size += 1
        self.last_changed = node
        touches += self._repair_upward(v)
        sink = self.sink
        if sink is not None:
            sink.touch_count += touches
        return node

    def delete(self, key) -> bool:
        nil = NIL
        v = self.root
        while v is not nil:
            k = v.key
            if key == k:
                break
            v = v.left if key < k else v.right
        if v is nil:
            return False

        touches = 1
        if v.left is not nil and v.right is not nil:
            # Relink the predecessor (max of the left subtree) into v's
            # position, then splice v out from where the predecessor was.
            # Node identity moves; keys are never copied between nodes.
            pred = subtree_maximum(v.left)
            touches += 2
            self._swap_with_predecessor(v, pred)

        # v now has at most one real child.
        c = v.left if v.left is not nil else v.right
        p = v.parent
        c.parent = p
        if p is nil:
            self.root = c if c is not nil else nil
        elif p.left is v:
            p.left = c
        else:
            p.right = c
        self.size -= 1
        self.last_changed = p if p is not nil else None
        if p is not nil:
            touches += self._repair_upward(p)
        sink = self.sink
        if sink is not None:
            sink.touch_count += touches
        return True

    def _swap_with_predecessor(self, v: Node, pred: Node):
        # Exchange tree positions of v and pred, where pred is the rightmost
        # node of v's left subtree. Weights go stale here; the upward repair
        # pass refreshes every node on the affected chain.
        nil = NIL
        g = v.parent
        if pred.parent is v:
            # pred is v's direct left child; v drops into pred's old spot.
            pl = pred.left
            pred.right = v.right
            v.right.parent = pred
            pred.left = v
            v.parent = pred
            v.left = pl
            pl.parent = v
            v.right = nil
        else:
            pp = pred.parent
            pl = pred.left
            pred.left = v.left
            v.left.parent = pred
            pred.right = v.right
            v.right.parent = pred
            pp.right = v
            v.parent = pp
            v.left = pl
            pl.parent = v
            v.right = nil
        pred.parent = g
        if g is nil:
            self.root = pred
        elif g.left is v:
            g.left = pred
        else:
            g.right = pred
        w = pred.weight
        pred.weight = v.weight
        v.weight = w

    def _repair_upward(self, start: Node) -> int:
        """Refresh weights and fix overhangs from start to the root."""
        nil = NIL
        dn = self._dn
        dd = self._dd
        gn = self._gn
        gd = self._gd
        v = start
        touches = 0
        while v is not nil:
            touches += 1
            parent = v.parent
            l = v.left
            r = v.right
            wl = l.weight
            wr = r.weight
            v.weight = wl + wr
            if wl * dn < wr * dd:
                # Right side too heavy; raise it. The gamma test compares the
                # heavy child's inner grandchild against the outer one; a tie
                # goes to the double rotation — with integral parameters a
                # tied single can leave the raised child unbalanced.
                if r.left.weight * gd >= r.right.weight * gn:
                    rotate_double(self, v, Direction.LEFT)
                else:
                    rotate_single(self, v, Direction.LEFT)
            elif wr * dn < wl * dd:
                if l.right.weight * gd >= l.left.weight * gn:
                    rotate_double(self, v, Direction.RIGHT)
                else:
                    rotate_single(self, v, Direction.RIGHT)
            v = parent
        # Splices and rotations may aim the sentinel's parent at real nodes;
        # re-loop it so the tree rests with the sentinel self-looped.
        nil.parent = nil
        return touches
